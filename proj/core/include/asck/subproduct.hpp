#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "asck/algebra.hpp"

namespace asck {

// Subalgebra of a finite direct product, stored as interned coordinate
// tuples. Elements are numbered by lexicographically sorted tuple order, so
// numbering is reproducible. Operations are evaluated componentwise on
// demand; the carrier is closed by construction, so lookups always hit.
class SubproductAlgebra final : public AlgebraOps {
 public:
  struct Coord {
    int base = 0;                     // index into bases()
    std::vector<int32_t> assignment;  // provenance label (free-algebra use)
  };

  const Signature& signature() const override { return sig_; }
  int size() const override { return static_cast<int>(n_); }
  int apply(int op, const int* args) const override;

  int ncoords() const { return ncoords_; }
  std::span<const int32_t> tuple(int e) const {
    return {arena_.data() + static_cast<size_t>(e) * ncoords_, static_cast<size_t>(ncoords_)};
  }
  // -1 when the tuple is not an element.
  int lookup(const int32_t* t) const;

  int num_bases() const { return static_cast<int>(bases_.size()); }
  const FiniteAlgebra& base(int i) const { return *bases_[i]; }
  const Coord& coord(int c) const { return coords_[c]; }

  // Componentwise projection to coordinate c, as an explicit map.
  std::vector<int32_t> projection(int c) const;

 private:
  friend class SubproductBuilder;
  Signature sig_;
  std::vector<std::shared_ptr<const FiniteAlgebra>> bases_;
  std::vector<Coord> coords_;
  std::vector<int32_t> coord_base_;
  int ncoords_ = 0;
  long n_ = 0;
  std::vector<int32_t> arena_;
  std::vector<int32_t> slots_;  // open addressing, element id + 1, 0 empty
  uint64_t mask_ = 0;
};

// Frontier-based closure of seed tuples under all operations, with caps.
// Optionally tracks one extra coordinate that is excluded from element
// identity; a clash there aborts with TrackConflict (used to test whether a
// map out of the closure is single-valued).
class SubproductBuilder {
 public:
  explicit SubproductBuilder(Signature sig);

  int add_base(std::shared_ptr<const FiniteAlgebra> b);
  int add_coord(int base, std::vector<int32_t> assignment = {});
  int add_seed(std::span<const int32_t> tuple);
  void set_tracker(std::shared_ptr<const FiniteAlgebra> target,
                   std::vector<int32_t> seed_values);

  struct Outcome {
    enum Status { Complete, SizeCap, TimeCap, TrackConflict } status = Complete;
    long explored = 0;
    std::shared_ptr<SubproductAlgebra> algebra;  // set when Complete
    std::vector<int32_t> seed_ids;               // remapped to final numbering
    std::vector<int32_t> track;                  // per final element id
  };

  Outcome run(long size_max, long time_budget_ms = 0);

 private:
  Signature sig_;
  std::vector<std::shared_ptr<const FiniteAlgebra>> bases_;
  std::vector<SubproductAlgebra::Coord> coords_;
  std::vector<int32_t> coord_base_;
  std::vector<std::vector<int32_t>> seeds_;
  std::shared_ptr<const FiniteAlgebra> track_base_;
  std::vector<int32_t> track_seeds_;
};

}  // namespace asck
