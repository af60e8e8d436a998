#pragma once

#include <span>
#include <string>
#include <vector>

#include "asck/algebra.hpp"
#include "asck/congruence.hpp"
#include "asck/hom.hpp"

namespace asck {

// Direct product with coordinate metadata. Elements are mixed-radix encoded,
// first factor most significant; the empty product is the trivial algebra.
struct ProductAlgebra {
  FiniteAlgebra algebra;
  std::vector<int> factor_sizes;

  int decode(int elt, int factor) const;
  int encode(std::span<const int> coords) const;
  Homomorphism projection(int factor) const;
};

ProductAlgebra product(const Signature& sig, std::vector<const FiniteAlgebra*> factors);
ProductAlgebra product2(const FiniteAlgebra& A, const FiniteAlgebra& B);

// Least subuniverse containing gens and all constants, as sorted parent ids.
// Throws PreconditionError when the result would be empty.
std::vector<int> subuniverse(const FiniteAlgebra& A, const std::vector<int>& gens);

struct GeneratedSubalgebra {
  FiniteAlgebra algebra;          // re-indexed to {0..m-1}, ascending parent ids
  std::vector<int32_t> elements;  // position -> parent element
  Homomorphism inclusion;         // into the parent
};

GeneratedSubalgebra subalgebra_generated(const FiniteAlgebra& A, const std::vector<int>& gens);

struct QuotientAlgebra {
  FiniteAlgebra algebra;   // elements are canonical block indices
  Homomorphism natural;    // surjection with kernel exactly theta
};

// Throws PreconditionError when theta is not compatible with A.
QuotientAlgebra quotient(const FiniteAlgebra& A, const Congruence& theta);

// Directly indecomposable factors together with an isomorphism witness
// product(factors) -> A. Closure-algebra signatures factor along clopen
// elements; otherwise complementary factor-congruence pairs are searched in
// the congruence lattice.
struct Decomposition {
  std::vector<FiniteAlgebra> factors;
  Homomorphism iso;  // from the rebuilt product onto A
};

Decomposition direct_decomposition(const FiniteAlgebra& A);

}  // namespace asck
