#include "asck/variety.hpp"

#include <algorithm>
#include <set>

#include "asck/structure.hpp"

namespace asck {

namespace {

long checked_pow(long base, int exp, long limit) {
  long v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > limit) return limit + 1;
  }
  return v;
}

std::vector<int32_t> assignment_digits(long index, int rank, int base) {
  std::vector<int32_t> out(rank);
  for (int i = rank - 1; i >= 0; --i) {
    out[i] = static_cast<int32_t>(index % base);
    index /= base;
  }
  return out;
}

// Wires a builder for the free-algebra construction: one coordinate per
// (generator, assignment) pair and one seed tuple per free generator.
void setup_free_builder(SubproductBuilder& builder, const VarietySpec& K, int rank) {
  long total = 0;
  std::vector<std::pair<int, long>> spans;
  for (const auto& g : K.generators) {
    long cnt = checked_pow(g->size(), rank, 1'000'000);
    total += cnt;
    if (total > 1'000'000) throw CapExceeded("free algebra coordinates", total);
    int b = builder.add_base(g);
    spans.emplace_back(b, cnt);
    for (long m = 0; m < cnt; ++m)
      builder.add_coord(b, assignment_digits(m, rank, g->size()));
  }
  std::vector<int32_t> tuple(total);
  for (int i = 0; i < rank; ++i) {
    long at = 0;
    for (size_t j = 0; j < spans.size(); ++j) {
      auto [b, cnt] = spans[j];
      (void)b;
      int bsize = K.generators[j]->size();
      for (long m = 0; m < cnt; ++m) tuple[at + m] = assignment_digits(m, rank, bsize)[i];
      at += cnt;
    }
    builder.add_seed(tuple);
  }
}

}  // namespace

int FreeAlgebra::coord_of(int base, std::span<const int32_t> assignment) const {
  for (int c = 0; c < view->ncoords(); ++c) {
    const auto& co = view->coord(c);
    if (co.base != base) continue;
    if (std::equal(co.assignment.begin(), co.assignment.end(), assignment.begin(),
                   assignment.end()))
      return c;
  }
  return -1;
}

std::vector<int32_t> FreeAlgebra::extension_hom(int base,
                                                std::span<const int32_t> assignment) const {
  int c = coord_of(base, assignment);
  if (c < 0) throw PreconditionError("no such coordinate");
  return view->projection(c);
}

FreeAlgebra free_algebra(const VarietySpec& K, int rank) {
  const Signature& sig = K.signature();
  if (rank < 0) throw PreconditionError("rank must be nonnegative");
  if (rank > K.caps.rank_max)
    throw PreconditionError("rank exceeds rank_max cap");
  if (rank == 0 && sig.constants().empty())
    throw PreconditionError("rank 0 requires constants in the signature");

  SubproductBuilder builder(sig);
  setup_free_builder(builder, K, rank);

  auto out = builder.run(K.caps.size_max, K.caps.time_budget_ms);
  if (out.status == SubproductBuilder::Outcome::SizeCap)
    throw CapExceeded("free algebra size", out.explored);
  if (out.status == SubproductBuilder::Outcome::TimeCap)
    throw CapExceeded("free algebra time budget", out.explored);

  FreeAlgebra f;
  f.view = out.algebra;
  f.rank = rank;
  f.generators = out.seed_ids;

  const long n = f.view->size();
  if (n <= kDenseTableMax) {
    const auto& v = *f.view;
    std::vector<std::vector<int32_t>> tables;
    std::vector<int> args(std::max(1, sig.max_arity()));
    for (int op = 0; op < sig.num_ops(); ++op) {
      const int k = sig.arity(op);
      size_t len = 1;
      for (int i = 0; i < k; ++i) len *= n;
      std::vector<int32_t> table(len);
      std::vector<int> tup(k, 0);
      for (size_t idx = 0; idx < len; ++idx) {
        for (int i = 0; i < k; ++i) args[i] = tup[i];
        table[idx] = static_cast<int32_t>(v.apply(op, args.data()));
        int i = k - 1;
        while (i >= 0 && tup[i] == n - 1) tup[i--] = 0;
        if (i >= 0) ++tup[i];
      }
      tables.push_back(std::move(table));
    }
    f.dense = std::make_shared<FiniteAlgebra>(sig, static_cast<int>(n), std::move(tables),
                                              "F(" + std::to_string(rank) + ")");
  }
  return f;
}

InQuasivarietyResult in_quasivariety(const FiniteAlgebra& A, const VarietySpec& K) {
  (void)K.signature();
  InQuasivarietyResult res;
  const int n = A.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      bool separated = false;
      for (size_t g = 0; g < K.generators.size() && !separated; ++g) {
        HomQuery q;
        q.separate = std::make_pair(a, b);
        auto r = homs(A, *K.generators[g], q);
        if (r.found()) {
          res.family.push_back({a, b, static_cast<int>(g), r.homs.front()});
          separated = true;
        }
      }
      if (!separated) {
        res.member = false;
        res.counter_pair = {a, b};
        return res;
      }
    }
  res.member = true;
  return res;
}

namespace {

// All generating subsets of A of the minimal size, ascending lexicographically.
std::vector<std::vector<int>> minimal_generating_sets(const FiniteAlgebra& A) {
  const int n = A.size();
  bool has_consts = !A.signature().constants().empty();
  std::vector<std::vector<int>> out;
  for (int m = 0; m <= n; ++m) {
    std::vector<int> pick;
    std::vector<std::vector<int>> found;
    // enumerate size-m subsets
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    if (m > n) break;
    for (;;) {
      if (m == 0) {
        if (has_consts && static_cast<int>(subuniverse(A, {}).size()) == n) found.push_back({});
      } else {
        std::vector<int> gens(idx.begin(), idx.end());
        bool full = false;
        if (has_consts || m > 0) {
          try {
            full = static_cast<int>(subuniverse(A, gens).size()) == n;
          } catch (const PreconditionError&) {
            full = false;
          }
        }
        if (full) found.push_back(gens);
      }
      if (m == 0) break;
      int i = m - 1;
      while (i >= 0 && idx[i] == n - m + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found.empty()) return found;
  }
  return out;
}

}  // namespace

InVarietyResult in_variety(const FiniteAlgebra& A, const VarietySpec& K) {
  const Signature& sig = K.signature();
  if (!(A.signature() == sig)) throw PreconditionError("signature mismatch");
  InVarietyResult res;
  if (A.size() == 1) {
    res.verdict = Tri::Yes;
    res.rank = 0;
    return res;
  }
  auto tuples = minimal_generating_sets(A);
  if (tuples.empty()) {
    res.verdict = Tri::No;  // cannot happen: the whole universe generates
    return res;
  }
  const int m = static_cast<int>(tuples.front().size());
  res.rank = m;
  bool capped = false;
  for (const auto& tup : tuples) {
    SubproductBuilder builder(sig);
    setup_free_builder(builder, K, m);
    auto pa = std::make_shared<FiniteAlgebra>(A);
    std::vector<int32_t> seed_vals(tup.begin(), tup.end());
    builder.set_tracker(pa, seed_vals);
    auto out = builder.run(K.caps.size_max, K.caps.time_budget_ms);
    res.explored = std::max(res.explored, out.explored);
    switch (out.status) {
      case SubproductBuilder::Outcome::TrackConflict:
        continue;  // this generating tuple admits no factoring map
      case SubproductBuilder::Outcome::SizeCap:
      case SubproductBuilder::Outcome::TimeCap:
        capped = true;
        continue;
      case SubproductBuilder::Outcome::Complete: {
        res.verdict = Tri::Yes;
        res.generating_tuple = tup;
        res.surjection = out.track;
        return res;
      }
    }
  }
  res.verdict = capped ? Tri::Unknown : Tri::No;
  return res;
}

namespace {

// All subuniverses of A, generated bottom-up from the constant closure
// (or the single-element closures when there are no constants).
std::vector<std::vector<int>> all_subuniverses(const FiniteAlgebra& A) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> work;
  auto add = [&](std::vector<int> u) {
    if (seen.insert(u).second) work.push_back(std::move(u));
  };
  if (!A.signature().constants().empty()) {
    add(subuniverse(A, {}));
  } else {
    for (int e = 0; e < A.size(); ++e) add(subuniverse(A, {e}));
  }
  for (size_t i = 0; i < work.size(); ++i) {
    std::vector<int> u = work[i];
    std::vector<char> inside(A.size(), 0);
    for (int e : u) inside[e] = 1;
    for (int e = 0; e < A.size(); ++e) {
      if (inside[e]) continue;
      std::vector<int> gens = u;
      gens.push_back(e);
      add(subuniverse(A, gens));
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

std::optional<std::pair<int, int>> lattice_operation_pair(const VarietySpec& K) {
  const Signature& sig = K.signature();
  for (int p = 0; p < sig.num_ops(); ++p) {
    if (sig.arity(p) != 2) continue;
    for (int q = 0; q < sig.num_ops(); ++q) {
      if (q == p || sig.arity(q) != 2) continue;
      bool ok = true;
      for (const auto& g : K.generators) {
        const FiniteAlgebra& B = *g;
        for (int a = 0; a < B.size() && ok; ++a) {
          if (B.apply2(p, a, a) != a || B.apply2(q, a, a) != a) ok = false;
          for (int b = 0; b < B.size() && ok; ++b) {
            if (B.apply2(p, a, b) != B.apply2(p, b, a)) ok = false;
            if (B.apply2(q, a, b) != B.apply2(q, b, a)) ok = false;
            if (B.apply2(p, a, B.apply2(q, a, b)) != a) ok = false;
            if (B.apply2(q, a, B.apply2(p, a, b)) != a) ok = false;
            for (int c = 0; c < B.size() && ok; ++c) {
              if (B.apply2(p, a, B.apply2(p, b, c)) != B.apply2(p, B.apply2(p, a, b), c))
                ok = false;
              if (B.apply2(q, a, B.apply2(q, b, c)) != B.apply2(q, B.apply2(q, a, b), c))
                ok = false;
            }
          }
        }
        if (!ok) break;
      }
      if (ok) return std::make_pair(p, q);
    }
  }
  return std::nullopt;
}

namespace {

void add_up_to_iso(std::vector<FiniteAlgebra>& acc, FiniteAlgebra cand) {
  for (const auto& have : acc)
    if (is_isomorphic(have, cand)) return;
  acc.push_back(std::move(cand));
}

}  // namespace

std::vector<FiniteAlgebra> si_members(const VarietySpec& K, long size_cap) {
  const Signature& sig = K.signature();
  (void)sig;
  std::vector<FiniteAlgebra> out;
  if (K.mode == ClassMode::Variety) {
    // Jonsson: with a distributive congruence lattice the SI members of the
    // generated variety live among quotients of subalgebras of the
    // generators. A lattice-operation pair certifies distributivity.
    if (!lattice_operation_pair(K))
      throw PreconditionError(
          "si_members in variety mode requires a lattice operation pair "
          "(congruence distributivity not established)");
    for (const auto& g : K.generators) {
      for (const auto& u : all_subuniverses(*g)) {
        auto S = subalgebra_generated(*g, u);
        CongruenceLattice lat = all_congruences(S.algebra);
        for (const auto& th : lat.elems) {
          auto Q = quotient(S.algebra, th);
          if (Q.algebra.size() < 2 || Q.algebra.size() > size_cap) continue;
          if (is_subdirectly_irreducible(Q.algebra)) add_up_to_iso(out, Q.algebra);
        }
      }
    }
  } else {
    // Relatively SI members of Q(K) are, up to isomorphism, among the
    // subalgebras of the generators (flagged in reports by the caller).
    for (const auto& g : K.generators)
      for (const auto& u : all_subuniverses(*g)) {
        auto S = subalgebra_generated(*g, u);
        if (S.algebra.size() < 2 || S.algebra.size() > size_cap) continue;
        if (is_relative_si(S.algebra, K).si) add_up_to_iso(out, S.algebra);
      }
  }
  std::sort(out.begin(), out.end(), [](const FiniteAlgebra& a, const FiniteAlgebra& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.table_bytes() < b.table_bytes();
  });
  for (auto& s : out) s.set_name("");  // derived names carry no information
  return out;
}

namespace {

std::vector<Congruence> member_kernels(const FiniteAlgebra& A, const VarietySpec& K) {
  std::vector<Congruence> kernels;
  for (const auto& g : K.generators) {
    HomQuery q;
    q.mode = HomMode::All;
    auto r = homs(A, *g, q);
    if (r.status == HomSearchResult::Capped)
      throw CapExceeded("hom enumeration nodes", r.nodes);
    for (const auto& h : r.homs) {
      Congruence ker = Congruence::from_labels(h.map);
      bool dup = false;
      for (const auto& k : kernels)
        if (k == ker) {
          dup = true;
          break;
        }
      if (!dup) kernels.push_back(std::move(ker));
    }
  }
  return kernels;
}

}  // namespace

Congruence relative_principal(const FiniteAlgebra& A, const VarietySpec& K,
                              const std::vector<std::pair<int, int>>& H) {
  Congruence acc = Congruence::total(A.size());
  for (const auto& ker : member_kernels(A, K)) {
    bool contains = true;
    for (auto [a, b] : H)
      if (!ker.same(a, b)) {
        contains = false;
        break;
      }
    if (contains) acc = acc.meet(ker);
  }
  return acc;
}

RelativeSiResult is_relative_si(const FiniteAlgebra& A, const VarietySpec& K) {
  if (A.size() < 2) throw PreconditionError("relative SI is undefined for the trivial algebra");
  std::vector<Congruence> rel = member_kernels(A, K);
  bool has_id = false;
  for (const auto& c : rel) has_id |= c.is_identity();
  if (!has_id) {
    // id must be an intersection of kernels, i.e. A in SP(K)
    Congruence meet_all = Congruence::total(A.size());
    for (const auto& c : rel) meet_all = meet_all.meet(c);
    if (!meet_all.is_identity())
      throw PreconditionError("is_relative_si requires A in Q(K)");
  }
  // close under meets
  for (size_t i = 0; i < rel.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      Congruence m = rel[i].meet(rel[j]);
      bool dup = false;
      for (const auto& c : rel)
        if (c == m) {
          dup = true;
          break;
        }
      if (!dup) rel.push_back(std::move(m));
    }
  Congruence mono = Congruence::total(A.size());
  bool any = false;
  for (const auto& c : rel) {
    if (c.is_identity()) continue;
    mono = mono.meet(c);
    any = true;
  }
  RelativeSiResult res;
  if (!any || !mono.is_identity()) {
    res.si = true;
    res.monolith = mono;  // total when there is no proper relative congruence
  }
  return res;
}

PresentedAlgebra finitely_presented(const VarietySpec& K, const FinitePresentation& pres) {
  FreeAlgebra F = free_algebra(K, pres.rank);
  if (!F.dense)
    throw CapExceeded("finitely_presented needs materialized tables", F.size());
  std::vector<int> gen_asg(F.generators.begin(), F.generators.end());
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : pres.relations) {
    if (e.lhs.max_var() >= pres.rank || e.rhs.max_var() >= pres.rank)
      throw PreconditionError("relation uses a variable beyond the rank");
    pairs.emplace_back(eval_term(*F.dense, e.lhs, gen_asg),
                       eval_term(*F.dense, e.rhs, gen_asg));
  }

  Congruence theta = Congruence::identity(static_cast<int>(F.size()));
  if (K.mode == ClassMode::Variety) {
    theta = congruence_generated(*F.dense, pairs);
  } else {
    // least relative congruence containing the pairs: meet of the kernels of
    // the coordinate projections above them (the homs into members of K)
    theta = Congruence::total(static_cast<int>(F.size()));
    for (int c = 0; c < F.view->ncoords(); ++c) {
      Congruence ker = Congruence::from_labels(F.view->projection(c));
      bool contains = true;
      for (auto [a, b] : pairs)
        if (!ker.same(a, b)) {
          contains = false;
          break;
        }
      if (contains) theta = theta.meet(ker);
    }
  }

  auto q = quotient(*F.dense, theta);
  PresentedAlgebra out;
  out.algebra = std::move(q.algebra);
  out.algebra.set_name("P");
  for (int32_t g : F.generators) out.generator_images.push_back(q.natural.map[g]);
  out.free = std::move(F);
  out.kernel = std::move(theta);
  return out;
}

UnifiabilityResult unifiable(const FiniteAlgebra& P, const VarietySpec& K) {
  const Signature& sig = K.signature();
  UnifiabilityResult res;
  if (!sig.constants().empty()) {
    FreeAlgebra F0 = free_algebra(K, 0);
    res.rank = 0;
    res.free_size = F0.size();
    auto r = homs(P, F0.ops(), {});
    if (r.found()) {
      res.verdict = Tri::Yes;
      res.unifier = r.homs.front();
    } else if (r.exhausted_none()) {
      // no hom into F(0); F(0) is a retract of every F(k), so none anywhere
      res.verdict = Tri::No;
    }
    return res;
  }
  for (int k = 0; k <= K.caps.rank_max; ++k) {
    FreeAlgebra F;
    try {
      F = free_algebra(K, k);
    } catch (const PreconditionError&) {
      continue;  // rank 0 without constants
    } catch (const CapExceeded&) {
      break;
    }
    res.rank = k;
    res.free_size = F.size();
    auto r = homs(P, F.ops(), {});
    if (r.found()) {
      res.verdict = Tri::Yes;
      res.unifier = r.homs.front();
      return res;
    }
  }
  res.verdict = Tri::Unknown;
  return res;
}

InQfResult in_qf(const FiniteAlgebra& A, const VarietySpec& K, int rank_cap) {
  const Signature& sig = K.signature();
  if (!(A.signature() == sig)) throw PreconditionError("signature mismatch");
  InQfResult res;
  res.max_rank = -1;
  if (A.size() == 1) {
    res.verdict = Tri::Yes;
    return res;
  }

  if (!sig.constants().empty()) {
    FreeAlgebra F0 = free_algebra(K, 0);
    res.f0_size = F0.size();
    auto r = homs(A, F0.ops(), {});
    if (r.exhausted_none()) {
      // every F(k) retracts onto F(0), so A admits no homomorphism into any
      // F(k) at all, and a nontrivial algebra cannot sit in SP of them
      res.verdict = Tri::No;
      res.no_hom_to_f0 = true;
      return res;
    }
  }

  const int n = A.size();
  std::vector<std::vector<int8_t>> sep(n, std::vector<int8_t>(n, 0));
  long remaining = static_cast<long>(n) * (n - 1) / 2;

  for (int k = 0; k <= rank_cap && remaining > 0; ++k) {
    FreeAlgebra F;
    try {
      F = free_algebra(K, k);
    } catch (const PreconditionError&) {
      continue;
    } catch (const CapExceeded& e) {
      res.free_sizes.push_back(e.explored);
      break;
    }
    res.max_rank = k;
    res.free_sizes.push_back(F.size());
    const AlgebraOps& target = F.ops();
    for (int a = 0; a < n && remaining > 0; ++a)
      for (int b = a + 1; b < n && remaining > 0; ++b) {
        if (sep[a][b]) continue;
        HomQuery q;
        q.separate = std::make_pair(a, b);
        auto r = homs(A, target, q);
        if (!r.found()) continue;
        const Homomorphism& h = r.homs.front();
        for (int x = 0; x < n; ++x)
          for (int y = x + 1; y < n; ++y)
            if (!sep[x][y] && h.map[x] != h.map[y]) {
              sep[x][y] = 1;
              --remaining;
              res.family.push_back({x, y, k, h});
            }
      }
  }
  res.verdict = remaining == 0 ? Tri::Yes : Tri::Unknown;
  return res;
}

}  // namespace asck
