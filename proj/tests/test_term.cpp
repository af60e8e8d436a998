#include <doctest.h>

#include <random>

#include "asck/catalog.hpp"
#include "asck/term.hpp"

using namespace asck;

namespace {

// independent one-variable evaluator over explicit closure-algebra tables
struct MiniModal {
  int n;
  std::vector<int> nt, dia;
  int aand(int a, int b) const { return a & b; }
  int oor(int a, int b) const { return a | b; }
  int box(int a) const { return nt[dia[nt[a]]]; }
  int mckinsey(int x) const { return oor(nt[box(dia[x])], dia[box(x)]); }
};

}  // namespace

TEST_CASE("term evaluation on the two-element closure algebra") {
  FiniteAlgebra a2 = two();
  Term t = parse_term(a2.signature(), "(dia v0)");
  int asg1[1] = {1};
  CHECK(eval_term(a2, t, std::span<const int>(asg1, 1)) == 1);
  int asg0[1] = {0};
  CHECK(eval_term(a2, t, std::span<const int>(asg0, 1)) == 0);
}

TEST_CASE("mckinsey term vanishes on the atoms of S2") {
  FiniteAlgebra s2 = s_l(2);
  Term mu = parse_term(s2.signature(), "(imp (box (dia v0)) (dia (box v0)))");
  // atoms are 1 and 2 in the bitmask encoding
  for (int atom : {1, 2}) {
    int asg[1] = {atom};
    CHECK(eval_term(s2, mu, std::span<const int>(asg, 1)) == 0);
  }
  // frozen from the independent evaluator
  MiniModal m{4, {3, 2, 1, 0}, {0, 3, 3, 3}};
  CHECK(m.mckinsey(1) == 0);
  CHECK(m.mckinsey(2) == 0);
}

TEST_CASE("mckinsey term is constantly one on the four-element algebra") {
  FiniteAlgebra f = four();
  Term mu = parse_term(f.signature(), "(imp (box (dia v0)) (dia (box v0)))");
  MiniModal m{4, {3, 2, 1, 0}, {0, 3, 2, 3}};
  for (int x = 0; x < 4; ++x) {
    int asg[1] = {x};
    int got = eval_term(f, mu, std::span<const int>(asg, 1));
    CHECK(got == m.mckinsey(x));
    CHECK(got == 3);
  }
}

TEST_CASE("eval errors") {
  FiniteAlgebra a2 = two();
  CHECK_THROWS_AS(parse_term(a2.signature(), "(meet v0 v0)"), ParseError);
  CHECK_THROWS_AS(parse_term(a2.signature(), "(and v0)"), ParseError);
  Term t = parse_term(a2.signature(), "(and v0 v1)");
  int asg[1] = {0};
  CHECK_THROWS_AS(eval_term(a2, t, std::span<const int>(asg, 1)), Error);
  int bad[2] = {0, 9};
  CHECK_THROWS_AS(eval_term(a2, t, std::span<const int>(bad, 2)), Error);
}

TEST_CASE("check_identity: mckinsey fails on S2 with an atom witness") {
  FiniteAlgebra s2 = s_l(2);
  QuasiIdentity mu = parse_quasi_identity(
      s2.signature(), "(qi (vars 1) (prem) (concl (= (imp (box (dia v0)) (dia (box v0))) one)))");
  auto r = check_identity(s2, mu);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.size() == 1);
  CHECK((r.witness[0] == 1 || r.witness[0] == 2));
}

TEST_CASE("check_identity: distributivity") {
  QuasiIdentity dist = parse_quasi_identity(
      bounded_lattice_signature(),
      "(qi (vars 3) (prem) (concl (= (and v0 (or v1 v2)) (or (and v0 v1) (and v0 v2)))))");
  CHECK(check_identity(two_bounded_lattice(), dist).holds);
  CHECK_FALSE(check_identity(m3b(), dist).holds);
  CHECK_FALSE(check_identity(n5b(), dist).holds);
}

TEST_CASE("check_quasi_identity: the passive rule") {
  const Signature sig = modal_signature();
  QuasiIdentity r = parse_quasi_identity(
      sig, "(qi (vars 1) (prem (= (and (dia v0) (dia (not v0))) one)) (concl (= zero one)))");
  auto rs2 = check_quasi_identity(s_l(2), r);
  CHECK_FALSE(rs2.holds);
  CHECK((rs2.witness[0] == 1 || rs2.witness[0] == 2));
  // on 2 the premise is unsatisfiable
  CHECK(check_quasi_identity(two(), r).holds);
}

TEST_CASE("check_quasi_identity: tautological implication") {
  QuasiIdentity triv = parse_quasi_identity(
      modal_signature(), "(qi (vars 1) (prem (= v0 v0)) (concl (= v0 v0)))");
  for (const FiniteAlgebra& a : {two(), s_l(2), four()})
    CHECK(check_quasi_identity(a, triv).holds);
  // the trivial algebra satisfies everything
  QuasiIdentity zo = parse_quasi_identity(modal_signature(),
                                          "(qi (vars 0) (prem) (concl (= zero one)))");
  CHECK(check_identity(FiniteAlgebra::trivial(modal_signature()), zo).holds);
}

TEST_CASE("parser round trips") {
  const Signature sig = modal_signature();
  for (const char* text :
       {"v0", "one", "(and v0 (or v1 (not v2)))", "(dia (and zero (not v0)))"}) {
    Term t = parse_term(sig, text);
    CHECK(parse_term(sig, print_term(sig, t)) == t);
  }

  std::mt19937 rng(20240811);
  auto random_term = [&](auto&& self, int depth) -> Term {
    if (depth == 0 || rng() % 4 == 0) {
      if (rng() % 2) return Term::var(static_cast<int>(rng() % 3));
      return Term::app(sig.index_of(rng() % 2 ? "zero" : "one"));
    }
    switch (rng() % 4) {
      case 0: return Term::app(sig.index_of("and"), {self(self, depth - 1), self(self, depth - 1)});
      case 1: return Term::app(sig.index_of("or"), {self(self, depth - 1), self(self, depth - 1)});
      case 2: return Term::app(sig.index_of("not"), {self(self, depth - 1)});
      default: return Term::app(sig.index_of("dia"), {self(self, depth - 1)});
    }
  };
  for (int i = 0; i < 100; ++i) {
    Term t = random_term(random_term, 4);
    CHECK(parse_term(sig, print_term(sig, t)) == t);
  }

  QuasiIdentity q = parse_quasi_identity(
      sig, "(qi (vars 2) (prem (= (dia v0) one) (= v1 v0)) (concl (= v0 one)))");
  CHECK(q.nvars == 2);
  CHECK(q.premise.size() == 2);
  QuasiIdentity q2 = parse_quasi_identity(sig, print_quasi_identity(sig, q));
  CHECK(print_quasi_identity(sig, q2) == print_quasi_identity(sig, q));
}

TEST_CASE("qi parse errors") {
  const Signature sig = modal_signature();
  CHECK_THROWS_AS(parse_quasi_identity(sig, "(qi (prem) (concl (= v0 v0)))"), ParseError);
  CHECK_THROWS_AS(parse_quasi_identity(sig, "(qi (vars 1) (prem) (concl (= v0 v1)))"),
                  ParseError);
  CHECK_THROWS_AS(parse_quasi_identity(sig, "(qi (vars 1) (prem (= v0)) (concl (= v0 v0)))"),
                  ParseError);
  CHECK_THROWS_AS(parse_quasi_identity(sig, "(qi (vars 1) (prem) (concl (= v0 v0))) junk"),
                  ParseError);
  CHECK_THROWS_AS(check_identity(two(), parse_quasi_identity(
      sig, "(qi (vars 1) (prem (= v0 one)) (concl (= v0 one)))")), PreconditionError);
}
