#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "asck/algebra.hpp"

namespace asck {

struct Homomorphism {
  std::vector<int32_t> map;
  bool injective = false;
  bool surjective = false;
};

enum class HomMode { Any, All, Injective, Surjective };

struct HomQuery {
  HomMode mode = HomMode::Any;
  // require map[separate->first] != map[separate->second]
  std::optional<std::pair<int, int>> separate;
  // forced partial assignments (source element -> target element)
  std::vector<std::pair<int, int>> pin;
  long node_cap = 200'000'000;
  long max_results = -1;  // All mode; -1 = unlimited
};

struct HomSearchResult {
  enum Status { Found, None, Capped } status = None;
  std::vector<Homomorphism> homs;
  long nodes = 0;

  bool found() const { return status == Found; }
  bool exhausted_none() const { return status == None; }
};

// Backtracking search with forward propagation over a greedily chosen
// generating sequence of A. Generator images are tried in ascending target
// order and the search backtracks lexicographically, so the first witness is
// the lexicographically least one wrt that seed order.
HomSearchResult homs(const FiniteAlgebra& A, const AlgebraOps& B, const HomQuery& q = {});

// Full table walk; independent of the search above.
bool verify_hom(const AlgebraOps& A, const AlgebraOps& B, std::span<const int32_t> map);

// Greedy minimal-ish generating sequence: start from the constant-generated
// subuniverse, repeatedly add the element whose addition maximizes closure
// growth (ties to the smallest element).
std::vector<int> generating_sequence(const FiniteAlgebra& A);

// Bijective homomorphism or nullopt, with invariant-based pruning
// (size, per-unary-op fixed-point counts, constants, in-degree multisets).
std::optional<Homomorphism> is_isomorphic(const FiniteAlgebra& A, const FiniteAlgebra& B);

}  // namespace asck
