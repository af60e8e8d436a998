#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "asck/structure.hpp"
#include "asck/term.hpp"
#include "asck/variety.hpp"

namespace asck {

enum class Status { Holds, Fails, Inconclusive };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Holds: return "HOLDS";
    case Status::Fails: return "FAILS";
    default: return "INCONCLUSIVE";
  }
}

// Exit-status mapping: HOLDS 0, FAILS 1, INCONCLUSIVE 2.
inline int status_exit_code(Status s) {
  return s == Status::Holds ? 0 : (s == Status::Fails ? 1 : 2);
}

// --- certificates -----------------------------------------------------------

// target_kind "free": target is F(rank) for the verdict inputs;
// "free-decomp-product": target is F_U(rank) x G_W(rank) for inputs/inputs_aux.
struct EmbeddingCert {
  std::string label;
  FiniteAlgebra source;
  int rank = 0;
  std::vector<int32_t> map;
  std::string target_kind = "free";
};

// Exhaustive: no homomorphism into F(0); F(0) is a retract of every F(k), so
// there is none into any F(k) either.
struct NoHomToRetractCert {
  std::string label;
  FiniteAlgebra source;
  long f0_size = 0;
};

// The subdirectly irreducible algebra has a join-reducible top while the top
// of every free algebra (and of its ultrapowers, by first-order transfer) is
// join-irreducible; validated on F(k) for the listed ranks. Applicable only
// when the signature has a lattice pair, every basic operation is monotone
// and F(0) is the two-element bound pair.
struct TopJoinReducibleCert {
  std::string label;
  FiniteAlgebra si;
  int a = 0, b = 0;  // a join b = top, both below top
  std::vector<int> validated_ranks;
};

// An unseparable pair: every congruence of the source not collapsing (x,y)
// has a quotient with join-reducible top, so no homomorphism into an
// ultrapower of F separates the pair in source x C.
struct AsccObstructionCert {
  FiniteAlgebra source;
  int x = 0, y = 0;
  std::vector<int> validated_ranks;
};

// Positive in_qf evidence: homomorphisms into free algebras jointly
// separating every pair of the source.
struct SeparationCert {
  std::string label;
  FiniteAlgebra source;
  std::vector<InQfResult::Sep> seps;
};

using Certificate = std::variant<EmbeddingCert, NoHomToRetractCert, TopJoinReducibleCert,
                                 AsccObstructionCert, SeparationCert>;

struct Verdict {
  std::string procedure;
  Status status = Status::Inconclusive;
  VarietySpec inputs;
  std::optional<VarietySpec> inputs_aux;  // second spec (free-decomp)
  int aux_rank = -1;                      // requested rank (free-decomp, non-embed)
  std::vector<Certificate> certificates;
  int explored_rank = -1;
  std::vector<long> free_sizes;
  std::vector<std::string> citations;
  std::vector<std::string> notes;
};

// Re-validates every certificate independently of the searches that produced
// it (embeddings are re-checked as injective homomorphisms against freshly
// rebuilt targets, absence certificates by exhaustive re-search).
bool verify_verdict(const Verdict& v, std::string* why = nullptr);

// --- procedures --------------------------------------------------------------

// Finite criterion: every finite (relatively) SI member S embeds into some
// F(k) or S x C does, with C the constant-generated subalgebra F(0)
// (required simple). FAILS only via a validated refutation certificate.
Verdict asc_check(const VarietySpec& K);

// Every finite (relatively) SI member embeds into some F(k).
Verdict sc_check(const VarietySpec& K);

// Membership of A in the ASC core: delegates to in_qf(A x C, K).
Verdict ascc_membership(const FiniteAlgebra& A, const VarietySpec& K);

struct QiClassification {
  enum Kind { Valid, Active, Passive, NotAdmissible } kind = Active;
  bool capped = false;     // some cap truncated the evidence
  int explored_rank = -1;  // q verified on F(k) for all k <= explored_rank
  std::vector<long> free_sizes;
  // NotAdmissible
  int refuted_rank = -1;
  std::vector<int> refuting_assignment;
  // premise algebra and unifiability evidence
  long premise_algebra_size = -1;
  std::optional<Homomorphism> unifier;
  long nonunifiability_maps_checked = -1;  // exhaustive recheck (small premise algebras)
  std::vector<std::string> notes;
};

inline const char* qi_kind_name(QiClassification::Kind k) {
  switch (k) {
    case QiClassification::Valid: return "VALID";
    case QiClassification::Active: return "ACTIVE";
    case QiClassification::Passive: return "PASSIVE";
    default: return "NOT_ADMISSIBLE";
  }
}

QiClassification classify_qi(const QuasiIdentity& q, const VarietySpec& K);

struct SplittingReport {
  bool mckinsey_holds = false;
  // (generator index, element) violating the McKinsey identity
  std::optional<std::pair<int, int>> mckinsey_witness;
  bool s2_present = false;  // S_2 occurs among the SI members of V(K)
  bool biconditional_ok = false;
  std::optional<Status> asc_status;      // when run with with_asc
  std::optional<std::string> derived_sc; // SC <-> McKinsey statement, when decided
  std::vector<std::string> notes;
};

// McKinsey identity on the generators vs presence of S_2 in the generated
// variety; with_asc additionally runs asc_check and reports the derived
// SC equivalence.
SplittingReport mckinsey_splitting(const VarietySpec& K, bool with_asc = false);

// Builds F for the union of the two specs, F_U(k), and G_W(k) (the non-2
// indecomposable factors of F_W(k)), then checks
// F_V(k) isomorphic to F_U(k) x G_W(k). KU generators must be McKinsey
// closure algebras, KW generators monadic algebras.
Verdict free_decomposition_check(const VarietySpec& KU, const VarietySpec& KW, int rank);

// Named exhaustive non-embedding experiments:
//   heyting-2sq        2x2 Heyting algebra vs the variety of the five-element
//                      Heyting algebra on the three-point fork
//   closure-4sq        4x4 closure algebra vs the join variety of the
//                      eight-point complex algebra and S_2
//   heyting-2sq-sanity inversion: 2x2 vs the two-element Heyting variety,
//                      where the embedding must exist
Verdict non_embedding_suite(std::string_view name, Caps caps);

}  // namespace asck
