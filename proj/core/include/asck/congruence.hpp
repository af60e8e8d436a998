#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "asck/algebra.hpp"

namespace asck {

// A congruence is stored as a frozen canonical block labeling: label[i] is
// the block of element i, blocks numbered by first occurrence. Equality of
// congruences is equality of label arrays.
class Congruence {
 public:
  Congruence() = default;

  static Congruence identity(int n);
  static Congruence total(int n);
  static Congruence from_labels(std::vector<int32_t> labels);

  int size() const { return static_cast<int>(label_.size()); }
  int num_blocks() const { return blocks_; }
  int block(int i) const { return label_[i]; }
  bool same(int a, int b) const { return label_[a] == label_[b]; }
  const std::vector<int32_t>& labels() const { return label_; }

  bool is_identity() const { return blocks_ == size(); }
  bool is_total() const { return blocks_ <= 1; }

  bool operator==(const Congruence& o) const { return label_ == o.label_; }

  // this <= other in the refinement order.
  bool refines(const Congruence& other) const;

  Congruence meet(const Congruence& other) const;
  // Partition join (transitive closure of the union); for two congruences
  // of the same algebra the result is again a congruence.
  Congruence join(const Congruence& other) const;

  // One-pass compatibility re-check against every operation table.
  bool compatible_with(const FiniteAlgebra& A) const;

  std::vector<std::vector<int>> block_list() const;

 private:
  std::vector<int32_t> label_;
  int blocks_ = 0;
};

// Least congruence of A identifying a and b (union-then-propagate).
Congruence principal_congruence(const FiniteAlgebra& A, int a, int b);

// Least congruence containing every pair in H.
Congruence congruence_generated(const FiniteAlgebra& A,
                                const std::vector<std::pair<int, int>>& pairs);

struct CongruenceLattice {
  // Sorted: identity first, total last (by descending block count, then
  // lexicographic labels).
  std::vector<Congruence> elems;
  std::vector<std::vector<int32_t>> meet_table, join_table;

  int bottom() const { return 0; }
  int top() const { return static_cast<int>(elems.size()) - 1; }
  bool leq(int i, int j) const { return elems[i].refines(elems[j]); }
  std::vector<std::pair<int, int>> covers() const;
  int index_of(const Congruence& c) const;
};

// Join-closure of all principal congruences. Throws CapExceeded when
// |A| > size_cap.
CongruenceLattice all_congruences(const FiniteAlgebra& A,
                                  long size_cap = kCongruenceSizeMax);

// Monolith (meet of all principal congruences over distinct pairs) when it
// is non-identity; nullopt otherwise. Throws PreconditionError on the
// trivial algebra.
std::optional<Congruence> subdirect_irreducibility_monolith(const FiniteAlgebra& A);
bool is_subdirectly_irreducible(const FiniteAlgebra& A);
bool is_simple(const FiniteAlgebra& A);

}  // namespace asck
