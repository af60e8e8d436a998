#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "asck/algebra.hpp"

namespace asck {

// Term tree over variables v0,v1,... and signature symbols.
class Term {
 public:
  static Term var(int index);
  static Term app(int op, std::vector<Term> args = {});

  bool is_var() const { return var_; }
  int var_index() const { return head_; }
  int op() const { return head_; }
  const std::vector<Term>& args() const { return args_; }

  int max_var() const;  // -1 when the term is variable-free
  void validate(const Signature& sig) const;

  bool operator==(const Term&) const;

  Term() = default;  // a nullary placeholder; normally built via var()/app()

 private:
  bool var_ = false;
  int head_ = 0;
  std::vector<Term> args_;
};

struct Equation {
  Term lhs, rhs;
};

// Premise may be empty, in which case this is an identity.
struct QuasiIdentity {
  int nvars = 0;
  std::vector<Equation> premise;
  Equation conclusion;

  bool is_identity() const { return premise.empty(); }
  void validate(const Signature& sig) const;
};

int eval_term(const AlgebraOps& A, const Term& t, std::span<const int> asg);

struct CheckResult {
  bool holds = true;
  std::vector<int> witness;          // a falsifying assignment when !holds
  bool complete = true;              // false when the assignment cap was hit
  long assignments_checked = 0;
};

// check_identity requires an empty premise; both walk all size^nvars
// assignments (up to assignment_cap, -1 = unlimited) and stop at the first
// counterexample.
CheckResult check_identity(const AlgebraOps& A, const QuasiIdentity& id,
                           long assignment_cap = -1);
CheckResult check_quasi_identity(const AlgebraOps& A, const QuasiIdentity& q,
                                 long assignment_cap = -1);

// S-expression syntax:
//   term  := vN | name | (name term*)
//   qi    := (qi (vars N) (prem (= term term)*) (concl (= term term)))
// Heads not in the signature are expanded when definable from it:
//   (box t)   -> (not (dia (not t)))
//   (imp s t) -> (or (not s) t)        [when imp is not primitive]
//   (not t)   -> (imp t zero)          [when not is not primitive]
//   (iff s t) -> (and (imp s t) (imp t s))
Term parse_term(const Signature& sig, std::string_view text);
QuasiIdentity parse_quasi_identity(const Signature& sig, std::string_view text);

// (pres (vars N) (= term term)*): a finite presentation's rank and relations.
std::pair<int, std::vector<Equation>> parse_presentation(const Signature& sig,
                                                         std::string_view text);

std::string print_term(const Signature& sig, const Term& t);
std::string print_quasi_identity(const Signature& sig, const QuasiIdentity& q);

}  // namespace asck
