#include "asck/catalog.hpp"

#include <algorithm>

namespace asck {

Signature modal_signature() {
  return Signature({{"and", 2}, {"or", 2}, {"not", 1}, {"zero", 0}, {"one", 0}, {"dia", 1}});
}

Signature heyting_signature() {
  return Signature({{"and", 2}, {"or", 2}, {"imp", 2}, {"zero", 0}, {"one", 0}});
}

Signature bounded_lattice_signature() {
  return Signature({{"and", 2}, {"or", 2}, {"zero", 0}, {"one", 0}});
}

namespace {

FiniteAlgebra boolean_modal(int atoms, std::vector<int32_t> dia, std::string name) {
  const int n = 1 << atoms;
  const int full = n - 1;
  std::vector<int32_t> tand(static_cast<size_t>(n) * n), tor(static_cast<size_t>(n) * n),
      tnot(n);
  for (int a = 0; a < n; ++a) {
    tnot[a] = full ^ a;
    for (int b = 0; b < n; ++b) {
      tand[static_cast<size_t>(a) * n + b] = a & b;
      tor[static_cast<size_t>(a) * n + b] = a | b;
    }
  }
  return FiniteAlgebra(modal_signature(), n,
                       {std::move(tand), std::move(tor), std::move(tnot),
                        {0}, {full}, std::move(dia)},
                       std::move(name));
}

}  // namespace

FiniteAlgebra two() { return boolean_modal(1, {0, 1}, "2"); }

FiniteAlgebra s_l(int l) {
  if (l < 1) throw PreconditionError("s_l requires l >= 1");
  const int n = 1 << l;
  std::vector<int32_t> dia(n, n - 1);
  dia[0] = 0;
  return boolean_modal(l, std::move(dia), "S" + std::to_string(l));
}

FiniteAlgebra four() {
  // elements 0, a=1 (open), not a=2 (closed), 1=3
  return boolean_modal(2, {0, 3, 2, 3}, "4");
}

FiniteAlgebra s43m() {
  // masks over a two-point cluster {x,y} below a reflexive point z
  std::vector<int32_t> dia = {0, 3, 3, 3, 7, 7, 7, 7};
  return boolean_modal(3, std::move(dia), "M");
}

namespace {

FiniteAlgebra lattice_from_order(int n, const std::vector<std::vector<uint8_t>>& leq,
                                 std::string name) {
  // meet/join computed from the order; requires them to exist
  std::vector<int32_t> tand(static_cast<size_t>(n) * n, -1),
      tor(static_cast<size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (!(leq[c][a] && leq[c][b])) continue;
        bool greatest = true;
        for (int d = 0; d < n && greatest; ++d)
          if (leq[d][a] && leq[d][b] && !leq[d][c]) greatest = false;
        if (greatest) {
          tand[static_cast<size_t>(a) * n + b] = c;
          break;
        }
      }
      for (int c = 0; c < n; ++c) {
        if (!(leq[a][c] && leq[b][c])) continue;
        bool least = true;
        for (int d = 0; d < n && least; ++d)
          if (leq[a][d] && leq[b][d] && !leq[c][d]) least = false;
        if (least) {
          tor[static_cast<size_t>(a) * n + b] = c;
          break;
        }
      }
      if (tand[static_cast<size_t>(a) * n + b] < 0 || tor[static_cast<size_t>(a) * n + b] < 0)
        throw Error("order is not a lattice");
    }
  return FiniteAlgebra(bounded_lattice_signature(), n,
                       {std::move(tand), std::move(tor), {0}, {n - 1}}, std::move(name));
}

}  // namespace

FiniteAlgebra m3b() {
  // 0 < p,q,r < 1 with p,q,r pairwise incomparable
  const int n = 5;
  std::vector<std::vector<uint8_t>> leq(n, std::vector<uint8_t>(n, 0));
  for (int i = 0; i < n; ++i) leq[i][i] = leq[0][i] = leq[i][4] = 1;
  return lattice_from_order(n, leq, "M3b");
}

FiniteAlgebra n5b() {
  // 0 < a < c < 1 and 0 < b < 1 with b incomparable to a and c
  const int n = 5;  // 0, a=1, b=2, c=3, 1=4
  std::vector<std::vector<uint8_t>> leq(n, std::vector<uint8_t>(n, 0));
  for (int i = 0; i < n; ++i) leq[i][i] = leq[0][i] = leq[i][4] = 1;
  leq[1][3] = 1;
  return lattice_from_order(n, leq, "N5b");
}

FiniteAlgebra two_bounded_lattice() {
  return FiniteAlgebra(bounded_lattice_signature(), 2,
                       {{0, 0, 0, 1}, {0, 1, 1, 1}, {0}, {1}}, "2lat");
}

void Poset::validate() const {
  for (int a = 0; a < size; ++a) {
    if (less(a, a)) throw ParseError("poset order must be irreflexive");
    for (int b = 0; b < size; ++b)
      for (int c = 0; c < size; ++c)
        if (less(a, b) && less(b, c) && !less(a, c))
          throw ParseError("poset order must be transitive");
  }
}

Poset lev_poset(int n) {
  if (n < 1) throw PreconditionError("lev_poset requires n >= 1");
  const int m = (1 << n) - 1;  // all masks except the full one
  Poset p;
  p.size = m;
  p.lt.assign(static_cast<size_t>(m) * m, 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (a != b && (a & b) == a) p.lt[static_cast<size_t>(a) * m + b] = 1;
  return p;
}

Poset chain_poset(int n) {
  if (n < 1) throw PreconditionError("chain_poset requires n >= 1");
  Poset p;
  p.size = n;
  p.lt.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) p.lt[static_cast<size_t>(a) * n + b] = 1;
  return p;
}

Poset antichain_poset(int n) {
  if (n < 1) throw PreconditionError("antichain_poset requires n >= 1");
  Poset p;
  p.size = n;
  p.lt.assign(static_cast<size_t>(n) * n, 0);
  return p;
}

namespace {

int down_closure(const Poset& p, int mask) {
  int out = mask;
  for (int j = 0; j < p.size; ++j)
    if (mask & (1 << j))
      for (int i = 0; i < p.size; ++i)
        if (p.less(i, j)) out |= 1 << i;
  return out;
}

bool is_up_set(const Poset& p, int mask) {
  for (int i = 0; i < p.size; ++i)
    if (mask & (1 << i))
      for (int j = 0; j < p.size; ++j)
        if (p.less(i, j) && !(mask & (1 << j))) return false;
  return true;
}

}  // namespace

FiniteAlgebra upset_heyting(const Poset& p) {
  p.validate();
  if (p.size > 20) throw CapExceeded("upset_heyting poset size", p.size);
  const int full = (1 << p.size) - 1;
  std::vector<int> ups;
  std::vector<int32_t> index(full + 1, -1);
  for (int m = 0; m <= full; ++m)
    if (is_up_set(p, m)) {
      index[m] = static_cast<int32_t>(ups.size());
      ups.push_back(m);
    }
  const int n = static_cast<int>(ups.size());
  std::vector<int32_t> tand(static_cast<size_t>(n) * n), tor(static_cast<size_t>(n) * n),
      timp(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      tand[static_cast<size_t>(a) * n + b] = index[ups[a] & ups[b]];
      tor[static_cast<size_t>(a) * n + b] = index[ups[a] | ups[b]];
      int imp = full & ~down_closure(p, ups[a] & ~ups[b]);
      timp[static_cast<size_t>(a) * n + b] = index[imp];
    }
  return FiniteAlgebra(heyting_signature(), n,
                       {std::move(tand), std::move(tor), std::move(timp),
                        {index[0]}, {index[full]}},
                       "upset");
}

FiniteAlgebra complex_closure(const Poset& p) {
  p.validate();
  if (p.size > 16) throw CapExceeded("complex_closure poset size", p.size);
  const int n = 1 << p.size;
  std::vector<int32_t> dia(n);
  for (int m = 0; m < n; ++m) dia[m] = down_closure(p, m);
  return boolean_modal(p.size, std::move(dia), "complex");
}

std::vector<int> open_elements(const FiniteAlgebra& m) {
  const Signature& sig = m.signature();
  int dia = sig.index_of("dia"), nt = sig.index_of("not");
  if (dia < 0 || nt < 0) throw PreconditionError("open elements need not/dia");
  std::vector<int> out;
  for (int e = 0; e < m.size(); ++e) {
    int box = m.apply1(nt, m.apply1(dia, m.apply1(nt, e)));
    if (box == e) out.push_back(e);
  }
  return out;
}

FiniteAlgebra open_heyting(const FiniteAlgebra& m) {
  if (!is_closure_algebra(m))
    throw PreconditionError("open_heyting requires a closure algebra");
  const Signature& sig = m.signature();
  const int dia = sig.index_of("dia"), nt = sig.index_of("not");
  const int aand = sig.index_of("and"), oor = sig.index_of("or");
  const int zero = sig.index_of("zero"), one = sig.index_of("one");

  std::vector<int> opens = open_elements(m);
  const int n = static_cast<int>(opens.size());
  std::vector<int32_t> back(m.size(), -1);
  for (int i = 0; i < n; ++i) back[opens[i]] = i;
  auto box = [&](int e) { return m.apply1(nt, m.apply1(dia, m.apply1(nt, e))); };

  std::vector<int32_t> tand(static_cast<size_t>(n) * n), tor(static_cast<size_t>(n) * n),
      timp(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      tand[static_cast<size_t>(a) * n + b] = back[m.apply2(aand, opens[a], opens[b])];
      tor[static_cast<size_t>(a) * n + b] = back[m.apply2(oor, opens[a], opens[b])];
      int imp = box(m.apply2(oor, m.apply1(nt, opens[a]), opens[b]));
      timp[static_cast<size_t>(a) * n + b] = back[imp];
    }
  return FiniteAlgebra(heyting_signature(), n,
                       {std::move(tand), std::move(tor), std::move(timp),
                        {back[m.apply0(zero)]}, {back[m.apply0(one)]}},
                       m.name().empty() ? "open" : "open(" + m.name() + ")");
}

namespace {

struct LawChecker {
  const FiniteAlgebra& A;
  std::vector<KindWitness>& failures;
  int aand, oor, nt, zero, one, dia, imp;

  explicit LawChecker(const FiniteAlgebra& a, std::vector<KindWitness>& f)
      : A(a), failures(f) {
    const Signature& s = a.signature();
    aand = s.index_of("and");
    oor = s.index_of("or");
    nt = s.index_of("not");
    zero = s.index_of("zero");
    one = s.index_of("one");
    dia = s.index_of("dia");
    imp = s.index_of("imp");
  }

  bool leq(int a, int b) const { return A.apply2(aand, a, b) == a; }

  bool fail(const std::string& law, std::vector<int> asg) {
    failures.push_back({law, std::move(asg)});
    return false;
  }

  bool bounded_lattice() {
    const int n = A.size();
    int bot = A.apply0(zero), top = A.apply0(one);
    for (int a = 0; a < n; ++a) {
      if (A.apply2(aand, a, a) != a) return fail("and idempotent", {a});
      if (A.apply2(oor, a, a) != a) return fail("or idempotent", {a});
      if (A.apply2(aand, a, bot) != bot) return fail("zero is bottom", {a});
      if (A.apply2(oor, a, top) != top) return fail("one is top", {a});
      for (int b = 0; b < n; ++b) {
        if (A.apply2(aand, a, b) != A.apply2(aand, b, a)) return fail("and commutative", {a, b});
        if (A.apply2(oor, a, b) != A.apply2(oor, b, a)) return fail("or commutative", {a, b});
        if (A.apply2(aand, a, A.apply2(oor, a, b)) != a) return fail("absorption", {a, b});
        if (A.apply2(oor, a, A.apply2(aand, a, b)) != a) return fail("absorption", {a, b});
        for (int c = 0; c < n; ++c) {
          if (A.apply2(aand, a, A.apply2(aand, b, c)) !=
              A.apply2(aand, A.apply2(aand, a, b), c))
            return fail("and associative", {a, b, c});
          if (A.apply2(oor, a, A.apply2(oor, b, c)) != A.apply2(oor, A.apply2(oor, a, b), c))
            return fail("or associative", {a, b, c});
        }
      }
    }
    return true;
  }

  bool boolean_modal() {
    if (nt < 0 || dia < 0) return fail("signature lacks not/dia", {});
    const int n = A.size();
    int bot = A.apply0(zero), top = A.apply0(one);
    for (int a = 0; a < n; ++a) {
      if (A.apply2(aand, a, A.apply1(nt, a)) != bot) return fail("complement meet", {a});
      if (A.apply2(oor, a, A.apply1(nt, a)) != top) return fail("complement join", {a});
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (A.apply2(aand, a, A.apply2(oor, b, c)) !=
              A.apply2(oor, A.apply2(aand, a, b), A.apply2(aand, a, c)))
            return fail("distributivity", {a, b, c});
    }
    if (A.apply1(dia, bot) != bot) return fail("dia normal", {bot});
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (A.apply1(dia, A.apply2(oor, a, b)) !=
            A.apply2(oor, A.apply1(dia, a), A.apply1(dia, b)))
          return fail("dia additive", {a, b});
    return true;
  }

  bool closure() {
    const int n = A.size();
    for (int a = 0; a < n; ++a) {
      int da = A.apply1(dia, a);
      if (!leq(a, da)) return fail("a <= dia a", {a});
      if (A.apply1(dia, da) != da) return fail("dia idempotent", {a});
    }
    return true;
  }

  bool monadic() {
    const int n = A.size();
    auto box = [&](int e) { return A.apply1(nt, A.apply1(dia, A.apply1(nt, e))); };
    for (int a = 0; a < n; ++a)
      if (A.apply1(dia, box(a)) != box(a)) return fail("dia box a = box a", {a});
    return true;
  }

  bool mckinsey() {
    const int n = A.size();
    int top = A.apply0(one);
    auto box = [&](int e) { return A.apply1(nt, A.apply1(dia, A.apply1(nt, e))); };
    for (int a = 0; a < n; ++a) {
      int lhs = box(A.apply1(dia, a)), rhs = A.apply1(dia, box(a));
      if (A.apply2(oor, A.apply1(nt, lhs), rhs) != top)
        return fail("mckinsey", {a});
    }
    return true;
  }

  bool heyting() {
    if (imp < 0) return fail("signature lacks imp", {});
    const int n = A.size();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          bool l = leq(A.apply2(aand, a, c), b);
          bool r = leq(c, A.apply2(imp, a, b));
          if (l != r) return fail("residuation", {a, b, c});
        }
    return true;
  }
};

}  // namespace

bool is_closure_algebra(const FiniteAlgebra& m) {
  const Signature& s = m.signature();
  if (s.index_of("and") < 0 || s.index_of("or") < 0 || s.index_of("not") < 0 ||
      s.index_of("zero") < 0 || s.index_of("one") < 0 || s.index_of("dia") < 0)
    return false;
  std::vector<KindWitness> sink;
  LawChecker lc(m, sink);
  return lc.bounded_lattice() && lc.boolean_modal() && lc.closure();
}

AlgebraKindReport classify(const FiniteAlgebra& a) {
  const Signature& s = a.signature();
  if (s.index_of("and") < 0 || s.index_of("or") < 0 || s.index_of("zero") < 0 ||
      s.index_of("one") < 0)
    throw PreconditionError("classify expects at least and/or/zero/one in the signature");

  AlgebraKindReport rep;
  LawChecker lc(a, rep.failures);
  rep.bounded_lattice = lc.bounded_lattice();
  if (rep.bounded_lattice && lc.imp >= 0) rep.heyting = lc.heyting();
  if (rep.bounded_lattice && lc.nt >= 0 && lc.dia >= 0) {
    rep.modal = lc.boolean_modal();
    if (rep.modal) {
      rep.closure = lc.closure();
      rep.mckinsey = lc.mckinsey();
      if (rep.closure) rep.monadic = lc.monadic();
    }
  }

  if (rep.closure) {
    const int nt = lc.nt, dia = lc.dia;
    int top = a.apply0(lc.one), bot = a.apply0(lc.zero);
    for (int d = 0; d < a.size(); ++d) {
      if (d == top || d == bot) continue;
      int notd = a.apply1(nt, d);
      if (a.apply1(dia, d) == top && a.apply1(dia, notd) == notd) {
        rep.four_witness = d;
        break;
      }
    }
    if (a.signature() == modal_signature()) {
      HomQuery q;
      q.mode = HomMode::Injective;
      auto r = homs(s_l(2), a, q);
      if (r.found()) rep.s2_embedding = r.homs.front();
    }
  }
  return rep;
}

}  // namespace asck
