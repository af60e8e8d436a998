#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asck/algebra.hpp"
#include "asck/hom.hpp"

namespace asck {

// Fixed signatures used throughout the catalog. Operation names double as
// the file-format vocabulary.
Signature modal_signature();           // and or not zero one dia
Signature heyting_signature();         // and or imp zero one
Signature bounded_lattice_signature(); // and or zero one

// Two-element closure algebra (dia is the identity).
FiniteAlgebra two();
// Closure algebra with l atoms whose only closed elements are 0 and 1;
// s_l(1) is isomorphic to two().
FiniteAlgebra s_l(int l);
// Four-element closure algebra with one open atom and one closed atom.
FiniteAlgebra four();
// Bounded lattices on the five-element non-distributive lattices: three
// incomparable middle elements (m3b) and a two-chain plus a point (n5b).
FiniteAlgebra m3b();
FiniteAlgebra n5b();
// Eight-element closure algebra whose open elements form a chain: the
// complex algebra of a two-point cluster below one reflexive point.
FiniteAlgebra s43m();

// Two-element bounded lattice / Heyting algebra (for the lattice examples).
FiniteAlgebra two_bounded_lattice();

struct Poset {
  int size = 0;
  std::vector<uint8_t> lt;  // row-major strict order: lt[a*size+b] <=> a < b

  bool less(int a, int b) const { return lt[static_cast<size_t>(a) * size + b] != 0; }
  void validate() const;  // irreflexive + transitive
};

// The power order (2,<=)^n with the top element removed; 2^n - 1 points
// ordered coordinatewise (points are bitmasks, numbered by mask value).
Poset lev_poset(int n);
Poset chain_poset(int n);
Poset antichain_poset(int n);

// Heyting algebra of up-sets: carrier = up-set bitmasks ascending, meet/join
// are intersection/union, a->b the largest up-set whose meet with a is below b.
FiniteAlgebra upset_heyting(const Poset& p);

// Powerset closure algebra of a poset: subsets as ascending bitmasks, dia is
// down-closure, so the open elements are exactly the up-sets.
FiniteAlgebra complex_closure(const Poset& p);

// Heyting algebra of the open elements of a closure algebra, with
// a -> b computed as box(not a or b).
FiniteAlgebra open_heyting(const FiniteAlgebra& m);

std::vector<int> open_elements(const FiniteAlgebra& m);
bool is_closure_algebra(const FiniteAlgebra& m);

struct KindWitness {
  std::string law;
  std::vector<int> assignment;
};

struct AlgebraKindReport {
  bool bounded_lattice = false;
  bool heyting = false;
  bool modal = false;
  bool closure = false;
  bool monadic = false;
  bool mckinsey = false;
  std::vector<KindWitness> failures;
  // d with d < dia d = 1 and dia(not d) = not d; {0,d,not d,1} is then a
  // subalgebra isomorphic to four().
  std::optional<int> four_witness;
  std::optional<Homomorphism> s2_embedding;
};

// Flags with failure witnesses. Requires at least and/or/zero/one in the
// signature (throws PreconditionError otherwise).
AlgebraKindReport classify(const FiniteAlgebra& a);

}  // namespace asck
