#include "asck/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace asck {

namespace {

struct UnionFind {
  std::vector<int32_t> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    int root = x;
    while (parent[root] != root) root = parent[root];
    while (parent[x] != root) {
      int nx = parent[x];
      parent[x] = root;
      x = nx;
    }
    return root;
  }
  // Returns true when the classes were distinct.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

std::vector<int32_t> canonical_labels(UnionFind& uf) {
  const int n = static_cast<int>(uf.parent.size());
  std::vector<int32_t> label(n, -1), root_label(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    if (root_label[r] < 0) root_label[r] = next++;
    label[i] = root_label[r];
  }
  return label;
}

// Union-then-propagate to the compatibility fixed point. Seeds are merged
// first; whenever two elements end up identified, every one-hole context
// forces the corresponding results to be identified as well.
Congruence propagate_closure(const FiniteAlgebra& A,
                             const std::vector<std::pair<int, int>>& seeds) {
  const int n = A.size();
  UnionFind uf(n);
  std::vector<std::pair<int32_t, int32_t>> queue;
  queue.reserve(seeds.size());
  for (auto [a, b] : seeds) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw PreconditionError("pair out of range");
    if (uf.unite(a, b)) queue.emplace_back(a, b);
  }
  const Signature& sig = A.signature();
  std::vector<int> args(std::max(1, sig.max_arity()));
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    auto [x, y] = queue[qi];
    for (int op = 0; op < sig.num_ops(); ++op) {
      const int k = sig.arity(op);
      if (k == 0) continue;
      if (k == 1) {
        int r = A.apply1(op, x), s = A.apply1(op, y);
        if (uf.unite(r, s)) queue.emplace_back(r, s);
        continue;
      }
      if (k == 2) {
        for (int c = 0; c < n; ++c) {
          int r = A.apply2(op, x, c), s = A.apply2(op, y, c);
          if (uf.unite(r, s)) queue.emplace_back(r, s);
          r = A.apply2(op, c, x);
          s = A.apply2(op, c, y);
          if (uf.unite(r, s)) queue.emplace_back(r, s);
        }
        continue;
      }
      // general arity: one hole, all contexts
      for (int pos = 0; pos < k; ++pos) {
        std::vector<int> ctx(k - 1, 0);
        for (;;) {
          int ai = 0;
          for (int i = 0; i < k; ++i) args[i] = (i == pos) ? x : ctx[ai++];
          int r = A.apply(op, args.data());
          ai = 0;
          for (int i = 0; i < k; ++i) args[i] = (i == pos) ? y : ctx[ai++];
          int s = A.apply(op, args.data());
          if (uf.unite(r, s)) queue.emplace_back(r, s);
          int i = k - 2;
          while (i >= 0 && ctx[i] == n - 1) ctx[i--] = 0;
          if (i < 0) break;
          ++ctx[i];
        }
      }
    }
  }
  return Congruence::from_labels(canonical_labels(uf));
}

}  // namespace

Congruence Congruence::identity(int n) {
  std::vector<int32_t> l(n);
  std::iota(l.begin(), l.end(), 0);
  return from_labels(std::move(l));
}

Congruence Congruence::total(int n) { return from_labels(std::vector<int32_t>(n, 0)); }

Congruence Congruence::from_labels(std::vector<int32_t> labels) {
  Congruence c;
  // re-canonicalize: blocks numbered by first occurrence; input labels may be
  // arbitrary nonnegative values (e.g. a homomorphism image array)
  int32_t max_label = -1;
  for (int32_t l : labels) {
    if (l < 0) throw PreconditionError("bad block label");
    max_label = std::max(max_label, l);
  }
  std::vector<int32_t> remap(max_label + 1, -1);
  int next = 0;
  for (auto& l : labels) {
    if (remap[l] < 0) remap[l] = next++;
    l = remap[l];
  }
  c.label_ = std::move(labels);
  c.blocks_ = next;
  return c;
}

bool Congruence::refines(const Congruence& other) const {
  // this <= other iff each block of this sits inside one block of other
  std::vector<int32_t> seen(blocks_, -1);
  for (size_t i = 0; i < label_.size(); ++i) {
    int32_t b = label_[i];
    if (seen[b] < 0)
      seen[b] = other.label_[i];
    else if (seen[b] != other.label_[i])
      return false;
  }
  return true;
}

Congruence Congruence::meet(const Congruence& other) const {
  std::map<std::pair<int32_t, int32_t>, int32_t> fresh;
  std::vector<int32_t> out(label_.size());
  for (size_t i = 0; i < label_.size(); ++i) {
    auto key = std::make_pair(label_[i], other.label_[i]);
    auto [it, inserted] = fresh.try_emplace(key, static_cast<int32_t>(fresh.size()));
    out[i] = it->second;
  }
  return from_labels(std::move(out));
}

Congruence Congruence::join(const Congruence& other) const {
  const int n = size();
  UnionFind uf(n);
  std::vector<int32_t> first_a(blocks_, -1), first_b(other.blocks_, -1);
  for (int i = 0; i < n; ++i) {
    int32_t a = label_[i], b = other.label_[i];
    if (first_a[a] < 0) first_a[a] = i; else uf.unite(first_a[a], i);
    if (first_b[b] < 0) first_b[b] = i; else uf.unite(first_b[b], i);
  }
  return from_labels(canonical_labels(uf));
}

bool Congruence::compatible_with(const FiniteAlgebra& A) const {
  const int n = A.size();
  if (n != size()) return false;
  const Signature& sig = A.signature();
  // representatives per block
  std::vector<int> rep(blocks_, -1);
  for (int i = n - 1; i >= 0; --i) rep[label_[i]] = i;
  std::vector<int> args(std::max(1, sig.max_arity())), rargs(std::max(1, sig.max_arity()));
  for (int op = 0; op < sig.num_ops(); ++op) {
    const int k = sig.arity(op);
    if (k == 0) continue;
    std::vector<int> tup(k, 0);
    for (;;) {
      for (int i = 0; i < k; ++i) rargs[i] = rep[label_[tup[i]]];
      if (label_[A.apply(op, tup.data())] != label_[A.apply(op, rargs.data())]) return false;
      int i = k - 1;
      while (i >= 0 && tup[i] == n - 1) tup[i--] = 0;
      if (i < 0) break;
      ++tup[i];
    }
  }
  return true;
}

std::vector<std::vector<int>> Congruence::block_list() const {
  std::vector<std::vector<int>> out(blocks_);
  for (size_t i = 0; i < label_.size(); ++i) out[label_[i]].push_back(static_cast<int>(i));
  return out;
}

Congruence principal_congruence(const FiniteAlgebra& A, int a, int b) {
  return propagate_closure(A, {{a, b}});
}

Congruence congruence_generated(const FiniteAlgebra& A,
                                const std::vector<std::pair<int, int>>& pairs) {
  return propagate_closure(A, pairs);
}

std::vector<std::pair<int, int>> CongruenceLattice::covers() const {
  std::vector<std::pair<int, int>> out;
  const int m = static_cast<int>(elems.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j || !leq(i, j)) continue;
      bool cover = true;
      for (int k = 0; k < m && cover; ++k)
        if (k != i && k != j && leq(i, k) && leq(k, j)) cover = false;
      if (cover) out.emplace_back(i, j);
    }
  return out;
}

int CongruenceLattice::index_of(const Congruence& c) const {
  for (size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == c) return static_cast<int>(i);
  return -1;
}

CongruenceLattice all_congruences(const FiniteAlgebra& A, long size_cap) {
  const int n = A.size();
  if (n > size_cap) throw CapExceeded("all_congruences size", n);

  std::vector<Congruence> found;
  auto add = [&](Congruence c) {
    for (const auto& e : found)
      if (e == c) return false;
    found.push_back(std::move(c));
    return true;
  };
  add(Congruence::identity(n));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) add(principal_congruence(A, a, b));
  // close under join
  for (size_t i = 0; i < found.size(); ++i)
    for (size_t j = 0; j < i; ++j) add(found[i].join(found[j]));

  std::sort(found.begin(), found.end(), [](const Congruence& x, const Congruence& y) {
    if (x.num_blocks() != y.num_blocks()) return x.num_blocks() > y.num_blocks();
    return x.labels() < y.labels();
  });

  CongruenceLattice lat;
  lat.elems = std::move(found);
  const int m = static_cast<int>(lat.elems.size());
  lat.meet_table.assign(m, std::vector<int32_t>(m));
  lat.join_table.assign(m, std::vector<int32_t>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) {
      int mi = lat.index_of(lat.elems[i].meet(lat.elems[j]));
      int jo = lat.index_of(lat.elems[i].join(lat.elems[j]));
      if (mi < 0 || jo < 0) throw Error("congruence set not closed under meet/join");
      lat.meet_table[i][j] = lat.meet_table[j][i] = mi;
      lat.join_table[i][j] = lat.join_table[j][i] = jo;
    }
  return lat;
}

std::optional<Congruence> subdirect_irreducibility_monolith(const FiniteAlgebra& A) {
  const int n = A.size();
  if (n <= 1) throw PreconditionError("subdirect irreducibility is undefined for the trivial algebra");
  Congruence acc = Congruence::total(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      acc = acc.meet(principal_congruence(A, a, b));
      if (acc.is_identity()) return std::nullopt;
    }
  return acc;
}

bool is_subdirectly_irreducible(const FiniteAlgebra& A) {
  return subdirect_irreducibility_monolith(A).has_value();
}

bool is_simple(const FiniteAlgebra& A) {
  const int n = A.size();
  if (n <= 1) throw PreconditionError("simplicity is undefined for the trivial algebra");
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!principal_congruence(A, a, b).is_total()) return false;
  return true;
}

}  // namespace asck
