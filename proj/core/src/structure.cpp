#include "asck/structure.hpp"

#include <algorithm>
#include <numeric>

#include "asck/catalog.hpp"

namespace asck {

int ProductAlgebra::decode(int elt, int factor) const {
  int div = 1;
  for (size_t i = factor + 1; i < factor_sizes.size(); ++i) div *= factor_sizes[i];
  return (elt / div) % factor_sizes[factor];
}

int ProductAlgebra::encode(std::span<const int> coords) const {
  int e = 0;
  for (size_t i = 0; i < factor_sizes.size(); ++i) e = e * factor_sizes[i] + coords[i];
  return e;
}

Homomorphism ProductAlgebra::projection(int factor) const {
  Homomorphism h;
  h.map.resize(algebra.size());
  for (int e = 0; e < algebra.size(); ++e) h.map[e] = decode(e, factor);
  h.surjective = true;
  h.injective = algebra.size() == factor_sizes[factor];
  return h;
}

ProductAlgebra product(const Signature& sig, std::vector<const FiniteAlgebra*> factors) {
  for (const auto* f : factors)
    if (!(f->signature() == sig))
      throw PreconditionError("product factors must share the signature");

  ProductAlgebra out;
  long n = 1;
  for (const auto* f : factors) {
    out.factor_sizes.push_back(f->size());
    n *= f->size();
    if (n > 1'000'000) throw CapExceeded("product size", n);
  }
  const int m = static_cast<int>(factors.size());
  const int size = static_cast<int>(n);

  std::vector<std::vector<int32_t>> tables;
  std::vector<int> coords(std::max(1, m)), args;
  for (int op = 0; op < sig.num_ops(); ++op) {
    const int k = sig.arity(op);
    size_t len = 1;
    for (int i = 0; i < k; ++i) len *= size;
    std::vector<int32_t> table(len);
    std::vector<int> tup(k, 0);
    for (size_t idx = 0; idx < len; ++idx) {
      int val = 0;
      for (int f = 0; f < m; ++f) {
        args.resize(k);
        int div = 1;
        for (int g = f + 1; g < m; ++g) div *= factors[g]->size();
        for (int i = 0; i < k; ++i) args[i] = (tup[i] / div) % factors[f]->size();
        val = val * factors[f]->size() + factors[f]->apply(op, args.data());
      }
      table[idx] = val;
      int i = k - 1;
      while (i >= 0 && tup[i] == size - 1) tup[i--] = 0;
      if (i >= 0) ++tup[i];
    }
    tables.push_back(std::move(table));
  }
  std::string name;
  for (const auto* f : factors) {
    if (!name.empty()) name += "x";
    name += f->name().empty() ? "?" : f->name();
  }
  if (factors.empty()) name = "trivial";
  out.algebra = FiniteAlgebra(sig, size, std::move(tables), name);
  return out;
}

ProductAlgebra product2(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  return product(A.signature(), {&A, &B});
}

std::vector<int> subuniverse(const FiniteAlgebra& A, const std::vector<int>& gens) {
  const Signature& sig = A.signature();
  const int n = A.size();
  std::vector<char> inside(n, 0);
  std::vector<int> members;
  auto push = [&](int e) {
    if (e < 0 || e >= n) throw PreconditionError("generator out of range");
    if (!inside[e]) {
      inside[e] = 1;
      members.push_back(e);
    }
  };
  for (int g : gens) push(g);
  for (int op = 0; op < sig.num_ops(); ++op)
    if (sig.arity(op) == 0) push(A.apply0(op));
  if (members.empty())
    throw PreconditionError("empty generated set: no constants and no generators");

  std::vector<int> args(std::max(1, sig.max_arity()));
  for (size_t mi = 0; mi < members.size(); ++mi) {
    for (int op = 0; op < sig.num_ops(); ++op) {
      const int k = sig.arity(op);
      if (k == 0) continue;
      std::vector<size_t> idx(k, 0);
      for (;;) {
        bool uses = false;
        for (int i = 0; i < k; ++i) {
          args[i] = members[idx[i]];
          uses |= idx[i] == mi;
        }
        if (uses) push(A.apply(op, args.data()));
        int i = k - 1;
        while (i >= 0 && idx[i] == mi) idx[i--] = 0;
        if (i < 0) break;
        ++idx[i];
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

GeneratedSubalgebra subalgebra_generated(const FiniteAlgebra& A, const std::vector<int>& gens) {
  GeneratedSubalgebra out;
  std::vector<int> elems = subuniverse(A, gens);
  const int m = static_cast<int>(elems.size());
  std::vector<int32_t> back(A.size(), -1);
  for (int i = 0; i < m; ++i) back[elems[i]] = i;

  const Signature& sig = A.signature();
  std::vector<std::vector<int32_t>> tables;
  std::vector<int> args(std::max(1, sig.max_arity()));
  for (int op = 0; op < sig.num_ops(); ++op) {
    const int k = sig.arity(op);
    size_t len = 1;
    for (int i = 0; i < k; ++i) len *= m;
    std::vector<int32_t> table(len);
    std::vector<int> tup(k, 0);
    for (size_t idx = 0; idx < len; ++idx) {
      for (int i = 0; i < k; ++i) args[i] = elems[tup[i]];
      table[idx] = back[A.apply(op, args.data())];
      int i = k - 1;
      while (i >= 0 && tup[i] == m - 1) tup[i--] = 0;
      if (i >= 0) ++tup[i];
    }
    tables.push_back(std::move(table));
  }
  out.algebra = FiniteAlgebra(sig, m, std::move(tables),
                              A.name().empty() ? "sub" : "sub(" + A.name() + ")");
  out.elements.assign(elems.begin(), elems.end());
  out.inclusion.map = out.elements;
  out.inclusion.injective = true;
  out.inclusion.surjective = m == A.size();
  return out;
}

QuotientAlgebra quotient(const FiniteAlgebra& A, const Congruence& theta) {
  if (theta.size() != A.size()) throw PreconditionError("congruence size mismatch");
  if (!theta.compatible_with(A))
    throw PreconditionError("partition is not compatible with the operations");
  const Signature& sig = A.signature();
  const int m = theta.num_blocks();
  std::vector<int> rep(m, -1);
  for (int i = A.size() - 1; i >= 0; --i) rep[theta.block(i)] = i;

  std::vector<std::vector<int32_t>> tables;
  std::vector<int> args(std::max(1, sig.max_arity()));
  for (int op = 0; op < sig.num_ops(); ++op) {
    const int k = sig.arity(op);
    size_t len = 1;
    for (int i = 0; i < k; ++i) len *= m;
    std::vector<int32_t> table(len);
    std::vector<int> tup(k, 0);
    for (size_t idx = 0; idx < len; ++idx) {
      for (int i = 0; i < k; ++i) args[i] = rep[tup[i]];
      table[idx] = theta.block(A.apply(op, args.data()));
      int i = k - 1;
      while (i >= 0 && tup[i] == m - 1) tup[i--] = 0;
      if (i >= 0) ++tup[i];
    }
    tables.push_back(std::move(table));
  }
  QuotientAlgebra out;
  out.algebra = FiniteAlgebra(sig, m, std::move(tables),
                              A.name().empty() ? "quot" : A.name() + "/~");
  out.natural.map.resize(A.size());
  for (int i = 0; i < A.size(); ++i) out.natural.map[i] = theta.block(i);
  out.natural.surjective = true;
  out.natural.injective = m == A.size();
  return out;
}

namespace {

// Clopen split for closure algebras: a clopen c other than 0,1 yields
// A = A/theta(c,1) x A/theta(not c,1).
std::vector<FiniteAlgebra> decompose_rec(const FiniteAlgebra& A) {
  if (A.size() <= 1) return {};
  if (is_closure_algebra(A)) {
    const Signature& sig = A.signature();
    int dia = sig.index_of("dia"), nt = sig.index_of("not");
    int one = sig.index_of("one"), zero = sig.index_of("zero");
    int top = A.apply0(one), bot = A.apply0(zero);
    int box_of = -1;
    for (int c = 0; c < A.size(); ++c) {
      if (c == top || c == bot) continue;
      bool closed = A.apply1(dia, c) == c;
      box_of = A.apply1(nt, A.apply1(dia, A.apply1(nt, c)));
      if (closed && box_of == c) {
        Congruence th1 = principal_congruence(A, c, top);
        Congruence th2 = principal_congruence(A, A.apply1(nt, c), top);
        auto q1 = quotient(A, th1), q2 = quotient(A, th2);
        auto f1 = decompose_rec(q1.algebra);
        auto f2 = decompose_rec(q2.algebra);
        f1.insert(f1.end(), std::make_move_iterator(f2.begin()),
                  std::make_move_iterator(f2.end()));
        return f1;
      }
    }
    return {A};
  }
  // general case: complementary factor-congruence pair in Con(A)
  CongruenceLattice lat = all_congruences(A);
  const int n = A.size();
  for (size_t i = 0; i < lat.elems.size(); ++i) {
    const Congruence& al = lat.elems[i];
    if (al.is_identity() || al.is_total()) continue;
    for (size_t j = 0; j < lat.elems.size(); ++j) {
      const Congruence& be = lat.elems[j];
      if (be.is_identity() || be.is_total()) continue;
      if (!al.meet(be).is_identity()) continue;
      // alpha o beta must be the total relation
      bool total = true;
      for (int a = 0; a < n && total; ++a)
        for (int b = 0; b < n && total; ++b) {
          bool linked = false;
          for (int c = 0; c < n && !linked; ++c)
            linked = al.same(a, c) && be.same(c, b);
          total = linked;
        }
      if (!total) continue;
      auto q1 = quotient(A, al), q2 = quotient(A, be);
      auto f1 = decompose_rec(q1.algebra);
      auto f2 = decompose_rec(q2.algebra);
      f1.insert(f1.end(), std::make_move_iterator(f2.begin()),
                std::make_move_iterator(f2.end()));
      return f1;
    }
  }
  return {A};
}

}  // namespace

Decomposition direct_decomposition(const FiniteAlgebra& A) {
  Decomposition out;
  out.factors = decompose_rec(A);
  std::vector<const FiniteAlgebra*> ptrs;
  for (const auto& f : out.factors) ptrs.push_back(&f);
  ProductAlgebra rebuilt = product(A.signature(), ptrs);
  auto iso = is_isomorphic(rebuilt.algebra, A);
  if (!iso) throw Error("decomposition failed to multiply back");
  out.iso = *iso;
  return out;
}

}  // namespace asck
