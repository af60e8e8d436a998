#include "asck/hom.hpp"

#include <algorithm>

namespace asck {

namespace {

// Closure of `inside` (bitmap) under all operations; returns the new size.
int close_set(const FiniteAlgebra& A, std::vector<char>& inside) {
  const Signature& sig = A.signature();
  const int n = A.size();
  std::vector<int> members;
  for (int i = 0; i < n; ++i)
    if (inside[i]) members.push_back(i);
  for (int op = 0; op < sig.num_ops(); ++op)
    if (sig.arity(op) == 0) {
      int c = A.apply0(op);
      if (!inside[c]) {
        inside[c] = 1;
        members.push_back(c);
      }
    }
  std::vector<int> args(std::max(1, sig.max_arity()));
  for (size_t mi = 0; mi < members.size(); ++mi) {
    int x = members[mi];
    for (int op = 0; op < sig.num_ops(); ++op) {
      const int k = sig.arity(op);
      if (k == 0) continue;
      if (k == 1) {
        int r = A.apply1(op, x);
        if (!inside[r]) {
          inside[r] = 1;
          members.push_back(r);
        }
        continue;
      }
      if (k == 2) {
        for (size_t mj = 0; mj <= mi; ++mj) {
          int y = members[mj];
          int r = A.apply2(op, x, y);
          if (!inside[r]) {
            inside[r] = 1;
            members.push_back(r);
          }
          r = A.apply2(op, y, x);
          if (!inside[r]) {
            inside[r] = 1;
            members.push_back(r);
          }
        }
        continue;
      }
      // general arity over current members, position of x anywhere
      std::vector<size_t> idx(k, 0);
      for (;;) {
        bool uses_x = false;
        for (int i = 0; i < k; ++i) {
          args[i] = members[idx[i]];
          uses_x |= (idx[i] == mi);
        }
        if (uses_x) {
          int r = A.apply(op, args.data());
          if (!inside[r]) {
            inside[r] = 1;
            members.push_back(r);
          }
        }
        int i = k - 1;
        while (i >= 0 && idx[i] == mi) idx[i--] = 0;
        if (i < 0) break;
        ++idx[i];
      }
    }
  }
  return static_cast<int>(members.size());
}

struct SearchCtx {
  const FiniteAlgebra& A;
  const AlgebraOps& B;
  const HomQuery& q;
  std::vector<int32_t> img;     // -1 = undefined
  std::vector<int32_t> trail;   // elements in definition order
  std::vector<char> used;       // injective mode
  bool inj = false;
  long nodes = 0;
  bool capped = false;

  SearchCtx(const FiniteAlgebra& a, const AlgebraOps& b, const HomQuery& query)
      : A(a), B(b), q(query), img(a.size(), -1) {
    inj = query.mode == HomMode::Injective;
    if (inj) used.assign(b.size(), 0);
  }

  bool assign(int a, int b) {
    if (img[a] >= 0) return img[a] == b;
    if (inj) {
      if (used[b]) return false;
      used[b] = 1;
    }
    img[a] = b;
    trail.push_back(a);
    if (q.separate) {
      auto [s, t] = *q.separate;
      if ((a == s && img[t] == b) || (a == t && img[s] == b)) return false;
    }
    return true;
  }

  // Process trail entries from `from`, applying every operation to tuples of
  // defined elements that involve the entry. Grows the trail as it goes.
  bool propagate(size_t from) {
    const Signature& sig = A.signature();
    std::vector<int> args(std::max(1, sig.max_arity()));
    std::vector<int> bargs(std::max(1, sig.max_arity()));
    for (size_t ti = from; ti < trail.size(); ++ti) {
      int x = trail[ti];
      for (int op = 0; op < sig.num_ops(); ++op) {
        const int k = sig.arity(op);
        if (k == 0) continue;
        if (k == 1) {
          if (!assign(A.apply1(op, x), B.apply(op, &img[x]))) return false;
          continue;
        }
        if (k == 2) {
          for (size_t tj = 0; tj <= ti; ++tj) {
            int y = trail[tj];
            int b2[2] = {img[x], img[y]};
            if (!assign(A.apply2(op, x, y), B.apply(op, b2))) return false;
            int b3[2] = {img[y], img[x]};
            if (!assign(A.apply2(op, y, x), B.apply(op, b3))) return false;
          }
          continue;
        }
        std::vector<size_t> idx(k, 0);
        for (;;) {
          bool uses_x = false;
          for (int i = 0; i < k; ++i) {
            args[i] = trail[idx[i]];
            bargs[i] = img[args[i]];
            uses_x |= (idx[i] == ti);
          }
          if (uses_x) {
            if (!assign(A.apply(op, args.data()), B.apply(op, bargs.data()))) return false;
          }
          int i = k - 1;
          while (i >= 0 && idx[i] == ti) idx[i--] = 0;
          if (i < 0) break;
          ++idx[i];
        }
      }
    }
    return true;
  }

  void rollback(size_t mark) {
    while (trail.size() > mark) {
      int a = trail.back();
      trail.pop_back();
      if (inj) used[img[a]] = 0;
      img[a] = -1;
    }
  }

  bool leaf_ok(std::vector<char>& scratch) {
    if (q.separate) {
      auto [s, t] = *q.separate;
      if (img[s] < 0 || img[t] < 0 || img[s] == img[t]) return false;
    }
    if (q.mode == HomMode::Surjective) {
      int distinct = 0;
      for (int v : img)
        if (!scratch[v]) {
          scratch[v] = 1;
          ++distinct;
        }
      for (int v : img) scratch[v] = 0;
      if (distinct != B.size()) return false;
    }
    return true;
  }
};

}  // namespace

std::vector<int> generating_sequence(const FiniteAlgebra& A) {
  const int n = A.size();
  std::vector<char> cur(n, 0);
  int cur_size = close_set(A, cur);  // constants closure (may be empty)
  std::vector<int> seq;
  while (cur_size < n) {
    int best = -1, best_size = -1;
    for (int e = 0; e < n; ++e) {
      if (cur[e]) continue;
      std::vector<char> trial = cur;
      trial[e] = 1;
      int s = close_set(A, trial);
      if (s > best_size) {
        best = e;
        best_size = s;
        if (s == n) break;
      }
    }
    seq.push_back(best);
    cur[best] = 1;
    cur_size = close_set(A, cur);
  }
  return seq;
}

namespace {

struct Driver {
  SearchCtx ctx;
  const std::vector<int>& gens;
  HomSearchResult result;
  std::vector<char> scratch;

  Driver(const FiniteAlgebra& A, const AlgebraOps& B, const HomQuery& q,
         const std::vector<int>& g)
      : ctx(A, B, q), gens(g), scratch(B.size(), 0) {}

  // returns false to abort the whole search (Any-mode hit or cap)
  bool dfs(size_t depth) {
    if (ctx.capped) return false;
    if (depth == gens.size()) {
      if (!ctx.leaf_ok(scratch)) return true;
      Homomorphism h;
      h.map.assign(ctx.img.begin(), ctx.img.end());
      std::vector<char> seen(ctx.B.size(), 0);
      h.injective = true;
      int distinct = 0;
      for (int v : h.map) {
        if (!seen[v]) {
          seen[v] = 1;
          ++distinct;
        } else {
          h.injective = false;
        }
      }
      h.surjective = distinct == ctx.B.size();
      result.homs.push_back(std::move(h));
      if (ctx.q.mode == HomMode::All) {
        return ctx.q.max_results < 0 ||
               static_cast<long>(result.homs.size()) < ctx.q.max_results;
      }
      return false;  // first witness suffices
    }
    int g = gens[depth];
    if (ctx.img[g] >= 0) return dfs(depth + 1);
    const int bn = ctx.B.size();
    for (int b = 0; b < bn; ++b) {
      if (++ctx.nodes > ctx.q.node_cap) {
        ctx.capped = true;
        return false;
      }
      size_t mark = ctx.trail.size();
      if (ctx.assign(g, b) && ctx.propagate(mark)) {
        if (!dfs(depth + 1)) {
          ctx.rollback(mark);
          return false;
        }
      }
      ctx.rollback(mark);
    }
    return true;
  }
};

}  // namespace

HomSearchResult homs(const FiniteAlgebra& A, const AlgebraOps& B, const HomQuery& q) {
  if (!(A.signature() == B.signature()))
    throw PreconditionError("hom search requires matching signatures");
  if (q.mode == HomMode::Injective && A.size() > B.size())
    return HomSearchResult{HomSearchResult::None, {}, 0};
  if (q.mode == HomMode::Surjective && A.size() < B.size())
    return HomSearchResult{HomSearchResult::None, {}, 0};

  std::vector<int> gens = generating_sequence(A);
  Driver drv(A, B, q, gens);

  // constants are forced
  const Signature& sig = A.signature();
  bool root_ok = true;
  for (int op = 0; op < sig.num_ops() && root_ok; ++op)
    if (sig.arity(op) == 0) root_ok = drv.ctx.assign(A.apply0(op), B.apply(op, nullptr));
  for (auto [a, b] : q.pin)
    if (root_ok) root_ok = drv.ctx.assign(a, b);
  if (root_ok) root_ok = drv.ctx.propagate(0);

  if (root_ok) drv.dfs(0);

  drv.result.nodes = drv.ctx.nodes;
  if (!drv.result.homs.empty())
    drv.result.status = HomSearchResult::Found;
  else
    drv.result.status = drv.ctx.capped ? HomSearchResult::Capped : HomSearchResult::None;
  return drv.result;
}

bool verify_hom(const AlgebraOps& A, const AlgebraOps& B, std::span<const int32_t> map) {
  if (!(A.signature() == B.signature())) return false;
  const int n = A.size();
  if (static_cast<int>(map.size()) != n) return false;
  for (int32_t v : map)
    if (v < 0 || v >= B.size()) return false;
  const Signature& sig = A.signature();
  std::vector<int> args(std::max(1, sig.max_arity())), bargs(std::max(1, sig.max_arity()));
  for (int op = 0; op < sig.num_ops(); ++op) {
    const int k = sig.arity(op);
    std::vector<int> tup(k, 0);
    for (;;) {
      for (int i = 0; i < k; ++i) {
        args[i] = tup[i];
        bargs[i] = map[tup[i]];
      }
      if (map[A.apply(op, args.data())] != B.apply(op, bargs.data())) return false;
      int i = k - 1;
      while (i >= 0 && tup[i] == n - 1) tup[i--] = 0;
      if (i < 0) break;
      ++tup[i];
    }
  }
  return true;
}

namespace {

std::vector<long> in_degree_profile(const FiniteAlgebra& A, int op) {
  std::vector<long> count(A.size(), 0);
  for (int32_t v : A.table(op)) ++count[v];
  std::sort(count.begin(), count.end());
  return count;
}

bool fingerprints_match(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  const Signature& sig = A.signature();
  for (int op = 0; op < sig.num_ops(); ++op) {
    if (sig.arity(op) == 1) {
      long fa = 0, fb = 0;
      for (int i = 0; i < A.size(); ++i) fa += A.apply1(op, i) == i;
      for (int i = 0; i < B.size(); ++i) fb += B.apply1(op, i) == i;
      if (fa != fb) return false;
    }
    if (in_degree_profile(A, op) != in_degree_profile(B, op)) return false;
  }
  return true;
}

}  // namespace

std::optional<Homomorphism> is_isomorphic(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  if (!(A.signature() == B.signature()))
    throw PreconditionError("isomorphism check requires matching signatures");
  if (A.size() != B.size()) return std::nullopt;
  if (!fingerprints_match(A, B)) return std::nullopt;
  HomQuery q;
  q.mode = HomMode::Injective;
  auto r = homs(A, B, q);
  if (!r.found()) return std::nullopt;
  Homomorphism h = r.homs.front();
  h.surjective = true;  // injective + equal sizes
  return h;
}

}  // namespace asck
