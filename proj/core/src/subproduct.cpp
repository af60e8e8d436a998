#include "asck/subproduct.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

namespace asck {

namespace {

inline uint64_t tuple_hash(const int32_t* t, int w) {
  uint64_t h = 1469598103934665603ull;
  for (int i = 0; i < w; ++i) {
    h ^= static_cast<uint32_t>(t[i]);
    h *= 1099511628211ull;
  }
  return h;
}

// Open-addressing intern table over an external arena.
struct Interner {
  std::vector<int32_t> slots;  // id + 1, 0 empty
  uint64_t mask = 0;
  long count = 0;

  explicit Interner(size_t initial = 1 << 12) {
    size_t cap = 1;
    while (cap < initial) cap <<= 1;
    slots.assign(cap, 0);
    mask = cap - 1;
  }

  void maybe_grow(const std::vector<int32_t>& arena, int w) {
    if (static_cast<uint64_t>(count) * 10 < slots.size() * 7) return;
    std::vector<int32_t> old = std::move(slots);
    slots.assign(old.size() * 2, 0);
    mask = slots.size() - 1;
    for (int32_t s : old) {
      if (s == 0) continue;
      const int32_t* t = arena.data() + static_cast<size_t>(s - 1) * w;
      uint64_t at = tuple_hash(t, w) & mask;
      while (slots[at] != 0) at = (at + 1) & mask;
      slots[at] = s;
    }
  }

  // Returns (id, inserted). When not found, the caller must already have
  // appended the tuple at arena position `count`.
  std::pair<int, bool> find_or_insert(std::vector<int32_t>& arena, int w, const int32_t* t) {
    uint64_t at = tuple_hash(t, w) & mask;
    for (;;) {
      int32_t s = slots[at];
      if (s == 0) {
        int id = static_cast<int>(count);
        size_t pos = arena.size();
        arena.resize(pos + w);
        std::memcpy(arena.data() + pos, t, sizeof(int32_t) * w);
        slots[at] = id + 1;
        ++count;
        maybe_grow(arena, w);
        return {id, true};
      }
      const int32_t* u = arena.data() + static_cast<size_t>(s - 1) * w;
      if (std::memcmp(u, t, sizeof(int32_t) * w) == 0) return {s - 1, false};
      at = (at + 1) & mask;
    }
  }
};

}  // namespace

int SubproductAlgebra::lookup(const int32_t* t) const {
  uint64_t at = tuple_hash(t, ncoords_) & mask_;
  for (;;) {
    int32_t s = slots_[at];
    if (s == 0) return -1;
    const int32_t* u = arena_.data() + static_cast<size_t>(s - 1) * ncoords_;
    if (std::memcmp(u, t, sizeof(int32_t) * ncoords_) == 0) return s - 1;
    at = (at + 1) & mask_;
  }
}

int SubproductAlgebra::apply(int op, const int* args) const {
  thread_local std::vector<int32_t> buf;
  buf.resize(ncoords_);
  const int k = sig_.arity(op);
  const int32_t* t[8];
  for (int i = 0; i < k; ++i) t[i] = arena_.data() + static_cast<size_t>(args[i]) * ncoords_;
  int avals[8];
  for (int c = 0; c < ncoords_; ++c) {
    const FiniteAlgebra& b = *bases_[coord_base_[c]];
    for (int i = 0; i < k; ++i) avals[i] = t[i][c];
    buf[c] = static_cast<int32_t>(b.apply(op, avals));
  }
  int id = lookup(buf.data());
  if (id < 0) throw Error("subproduct carrier is not closed (internal)");
  return id;
}

std::vector<int32_t> SubproductAlgebra::projection(int c) const {
  std::vector<int32_t> out(n_);
  for (long e = 0; e < n_; ++e) out[e] = arena_[static_cast<size_t>(e) * ncoords_ + c];
  return out;
}

SubproductBuilder::SubproductBuilder(Signature sig) : sig_(std::move(sig)) {
  if (sig_.max_arity() > 8) throw PreconditionError("arity above 8 not supported");
}

int SubproductBuilder::add_base(std::shared_ptr<const FiniteAlgebra> b) {
  if (!(b->signature() == sig_)) throw PreconditionError("base signature mismatch");
  bases_.push_back(std::move(b));
  return static_cast<int>(bases_.size()) - 1;
}

int SubproductBuilder::add_coord(int base, std::vector<int32_t> assignment) {
  coords_.push_back({base, std::move(assignment)});
  coord_base_.push_back(base);
  return static_cast<int>(coords_.size()) - 1;
}

int SubproductBuilder::add_seed(std::span<const int32_t> tuple) {
  if (tuple.size() != coords_.size()) throw PreconditionError("seed width mismatch");
  seeds_.emplace_back(tuple.begin(), tuple.end());
  return static_cast<int>(seeds_.size()) - 1;
}

void SubproductBuilder::set_tracker(std::shared_ptr<const FiniteAlgebra> target,
                                    std::vector<int32_t> seed_values) {
  if (seed_values.size() != seeds_.size())
    throw PreconditionError("tracker needs one value per seed");
  track_base_ = std::move(target);
  track_seeds_ = std::move(seed_values);
}

SubproductBuilder::Outcome SubproductBuilder::run(long size_max, long time_budget_ms) {
  const int w = static_cast<int>(coords_.size());
  const bool tracking = track_base_ != nullptr;
  Deadline deadline = Deadline::after_ms(time_budget_ms);

  std::vector<int32_t> arena;
  Interner intern;
  std::vector<int32_t> track;
  Outcome out;

  // op applications also touch the tracked coordinate
  auto track_apply = [&](int op, const int* ids, int k) {
    int avals[8];
    for (int i = 0; i < k; ++i) avals[i] = track[ids[i]];
    return track_base_->apply(op, avals);
  };

  bool conflict = false, size_hit = false;
  std::vector<int32_t> buf(w);

  auto intern_tuple = [&](const int32_t* t, int tval) -> int {
    auto [id, inserted] = intern.find_or_insert(arena, w, t);
    if (tracking) {
      if (inserted)
        track.push_back(static_cast<int32_t>(tval));
      else if (track[id] != tval)
        conflict = true;
    }
    if (inserted && intern.count > size_max) size_hit = true;
    return id;
  };

  std::vector<int32_t> seed_ids;
  for (size_t s = 0; s < seeds_.size(); ++s)
    seed_ids.push_back(intern_tuple(seeds_[s].data(), tracking ? track_seeds_[s] : 0));

  // constants
  for (int op = 0; op < sig_.num_ops() && !conflict && !size_hit; ++op) {
    if (sig_.arity(op) != 0) continue;
    for (int c = 0; c < w; ++c) buf[c] = static_cast<int32_t>(bases_[coord_base_[c]]->apply0(op));
    intern_tuple(buf.data(), tracking ? track_base_->apply0(op) : 0);
  }

  // which binary ops are commutative on every base (and the tracker)
  std::vector<char> commutative(sig_.num_ops(), 0);
  for (int op = 0; op < sig_.num_ops(); ++op) {
    if (sig_.arity(op) != 2) continue;
    bool comm = true;
    auto check = [&](const FiniteAlgebra& b) {
      for (int x = 0; x < b.size() && comm; ++x)
        for (int y = x + 1; y < b.size() && comm; ++y)
          comm = b.apply2(op, x, y) == b.apply2(op, y, x);
    };
    for (const auto& b : bases_) check(*b);
    if (tracking) check(*track_base_);
    commutative[op] = comm;
  }

  auto compute = [&](int op, const int* ids, int k) {
    const int32_t* t[8];
    for (int i = 0; i < k; ++i) t[i] = arena.data() + static_cast<size_t>(ids[i]) * w;
    int avals[8];
    for (int c = 0; c < w; ++c) {
      const FiniteAlgebra& b = *bases_[coord_base_[c]];
      for (int i = 0; i < k; ++i) avals[i] = t[i][c];
      buf[c] = static_cast<int32_t>(b.apply(op, avals));
    }
    intern_tuple(buf.data(), tracking ? track_apply(op, ids, k) : 0);
  };

  for (long i = 0; i < intern.count && !conflict && !size_hit; ++i) {
    if (deadline.expired()) {
      out.status = Outcome::TimeCap;
      out.explored = intern.count;
      return out;
    }
    for (int op = 0; op < sig_.num_ops() && !conflict && !size_hit; ++op) {
      const int k = sig_.arity(op);
      if (k == 0) continue;
      if (k == 1) {
        int id = static_cast<int>(i);
        compute(op, &id, 1);
        continue;
      }
      if (k == 2) {
        int ids[2];
        for (long j = 0; j <= i && !conflict && !size_hit; ++j) {
          ids[0] = static_cast<int>(i);
          ids[1] = static_cast<int>(j);
          compute(op, ids, 2);
          if (!commutative[op] && j < i) {
            ids[0] = static_cast<int>(j);
            ids[1] = static_cast<int>(i);
            compute(op, ids, 2);
          }
        }
        continue;
      }
      // general arity: tuples over elements <= i containing i
      std::vector<long> idx(k, 0);
      int ids[8];
      for (;;) {
        bool uses = false;
        for (int p = 0; p < k; ++p) {
          ids[p] = static_cast<int>(idx[p]);
          uses |= idx[p] == i;
        }
        if (uses) compute(op, ids, k);
        if (conflict || size_hit) break;
        int p = k - 1;
        while (p >= 0 && idx[p] == i) idx[p--] = 0;
        if (p < 0) break;
        ++idx[p];
      }
    }
  }

  if (conflict) {
    out.status = Outcome::TrackConflict;
    out.explored = intern.count;
    return out;
  }
  if (size_hit) {
    out.status = Outcome::SizeCap;
    out.explored = intern.count;
    return out;
  }

  // publish with lexicographically sorted tuples
  const long n = intern.count;
  std::vector<int32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int32_t a, int32_t b) {
    const int32_t* ta = arena.data() + static_cast<size_t>(a) * w;
    const int32_t* tb = arena.data() + static_cast<size_t>(b) * w;
    return std::lexicographical_compare(ta, ta + w, tb, tb + w);
  });
  std::vector<int32_t> inv(n);
  for (long i = 0; i < n; ++i) inv[perm[i]] = static_cast<int32_t>(i);

  auto alg = std::make_shared<SubproductAlgebra>();
  alg->sig_ = sig_;
  alg->bases_ = bases_;
  alg->coords_ = coords_;
  alg->coord_base_ = coord_base_;
  alg->ncoords_ = w;
  alg->n_ = n;
  alg->arena_.resize(static_cast<size_t>(n) * w);
  for (long i = 0; i < n; ++i)
    std::memcpy(alg->arena_.data() + static_cast<size_t>(i) * w,
                arena.data() + static_cast<size_t>(perm[i]) * w, sizeof(int32_t) * w);
  size_t cap = 1;
  while (cap < static_cast<size_t>(n) * 2) cap <<= 1;
  alg->slots_.assign(cap, 0);
  alg->mask_ = cap - 1;
  for (long i = 0; i < n; ++i) {
    const int32_t* t = alg->arena_.data() + static_cast<size_t>(i) * w;
    uint64_t at = tuple_hash(t, w) & alg->mask_;
    while (alg->slots_[at] != 0) at = (at + 1) & alg->mask_;
    alg->slots_[at] = static_cast<int32_t>(i) + 1;
  }

  out.status = Outcome::Complete;
  out.explored = n;
  out.algebra = std::move(alg);
  for (int32_t s : seed_ids) out.seed_ids.push_back(inv[s]);
  if (tracking) {
    out.track.resize(n);
    for (long i = 0; i < n; ++i) out.track[i] = track[perm[i]];
  }
  return out;
}

}  // namespace asck
