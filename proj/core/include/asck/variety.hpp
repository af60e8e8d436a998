#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "asck/congruence.hpp"
#include "asck/hom.hpp"
#include "asck/subproduct.hpp"
#include "asck/term.hpp"
#include "asck/varspec.hpp"

namespace asck {

// Free algebra of finite rank for the class generated by K: the subalgebra
// of prod_{B in K} B^(B^k) generated by the k diagonal tuples. Element
// numbering follows the sorted provenance tuples; operation tables are
// materialized when the carrier is small enough.
struct FreeAlgebra {
  std::shared_ptr<const SubproductAlgebra> view;
  std::shared_ptr<const FiniteAlgebra> dense;  // null above the table cap
  int rank = 0;
  std::vector<int32_t> generators;

  const AlgebraOps& ops() const { return dense ? static_cast<const AlgebraOps&>(*dense) : *view; }
  long size() const { return view->size(); }

  // Coordinate index of (generator algebra, assignment) and the projection
  // homomorphism onto that generator: the universal extension of the
  // assignment.
  int coord_of(int base, std::span<const int32_t> assignment) const;
  std::vector<int32_t> extension_hom(int base, std::span<const int32_t> assignment) const;
};

// Throws CapExceeded when the closure exceeds K.caps.size_max (the exception
// carries the explored element count).
FreeAlgebra free_algebra(const VarietySpec& K, int rank);

struct InQuasivarietyResult {
  bool member = false;
  struct Sep {
    int a, b;        // separated pair
    int gen;         // generator index
    Homomorphism hom;
  };
  std::vector<Sep> family;
  std::optional<std::pair<int, int>> counter_pair;
};

// Separating-family test for membership in Q(K) = SP(K) (ultraproducts of a
// finite set of finite algebras add nothing for finite members).
InQuasivarietyResult in_quasivariety(const FiniteAlgebra& A, const VarietySpec& K);

struct InVarietyResult {
  Tri verdict = Tri::Unknown;
  std::vector<int> generating_tuple;   // images of the free generators in A
  std::vector<int32_t> surjection;     // free-algebra element -> A, when Yes
  int rank = -1;
  long explored = 0;
};

// Membership in V(K) = HSP(K) for finite A, via a surjection from the free
// algebra on a minimal generating set of A. Three-valued: caps give Unknown.
InVarietyResult in_variety(const FiniteAlgebra& A, const VarietySpec& K);

// Subdirectly irreducible members up to isomorphism: in variety mode the SI
// algebras among quotients of subalgebras of the generators (requires a
// congruence-distributive signature, asserted via a lattice-operation pair);
// in quasivariety mode the relatively SI subalgebras of the generators.
std::vector<FiniteAlgebra> si_members(const VarietySpec& K, long size_cap);

// Least K-congruence containing H: the intersection of kernels of
// homomorphisms into members of K above H (total relation when none).
Congruence relative_principal(const FiniteAlgebra& A, const VarietySpec& K,
                              const std::vector<std::pair<int, int>>& H);

struct RelativeSiResult {
  bool si = false;
  std::optional<Congruence> monolith;
};
RelativeSiResult is_relative_si(const FiniteAlgebra& A, const VarietySpec& K);

struct FinitePresentation {
  int rank = 0;
  std::vector<Equation> relations;  // over v0..v_{rank-1}
};

struct PresentedAlgebra {
  FiniteAlgebra algebra;
  std::vector<int32_t> generator_images;
  FreeAlgebra free;
  Congruence kernel;
};

// F(rank) modulo the (relative, in quasivariety mode) congruence generated
// by the relation pairs.
PresentedAlgebra finitely_presented(const VarietySpec& K, const FinitePresentation& pres);

struct UnifiabilityResult {
  Tri verdict = Tri::Unknown;
  std::optional<Homomorphism> unifier;  // into F(0) resp. F(k)
  int rank = 0;
  long free_size = 0;
};

// When the signature has constants this is decided through F(0) (a retract
// of every F(k)); otherwise a bounded search up to caps.rank_max.
UnifiabilityResult unifiable(const FiniteAlgebra& P, const VarietySpec& K);

struct InQfResult {
  Tri verdict = Tri::Unknown;
  struct Sep {
    int a, b;
    int rank;
    Homomorphism hom;
  };
  std::vector<Sep> family;
  bool no_hom_to_f0 = false;  // certificate behind a No verdict
  long f0_size = 0;
  std::vector<long> free_sizes;
  int max_rank = -1;
};

// Membership of A in Q(F): Yes when every pair is separated by a
// homomorphism into some F(k), k <= rank_cap; No via the no-hom-to-F(0)
// retract certificate; Unknown otherwise.
InQfResult in_qf(const FiniteAlgebra& A, const VarietySpec& K, int rank_cap);

// A pair of binary operations forming a lattice on every generator
// (idempotent, commutative, associative, absorptive), when one exists.
// Certifies congruence distributivity of the generated (quasi)variety.
std::optional<std::pair<int, int>> lattice_operation_pair(const VarietySpec& K);

}  // namespace asck
