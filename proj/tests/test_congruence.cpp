#include <doctest.h>

#include <random>
#include <set>

#include "asck/catalog.hpp"
#include "asck/structure.hpp"
#include "asck/term.hpp"
#include "asck/variety.hpp"
#include "oracles.hpp"

using namespace asck;

namespace {

std::set<std::vector<int32_t>> label_set(const std::vector<Congruence>& cs) {
  std::set<std::vector<int32_t>> out;
  for (const auto& c : cs) out.insert(c.labels());
  return out;
}

}  // namespace

TEST_CASE("principal congruences") {
  CHECK(principal_congruence(four(), 2, 2).is_identity());

  // collapsing the open atom with the top in 4 gives the 2-quotient
  Congruence th = principal_congruence(four(), 1, 3);
  CHECK(th.labels() == std::vector<int32_t>{0, 1, 0, 1});
  CHECK(quotient(four(), th).algebra.size() == 2);

  // M3b is simple: every pair collapses everything
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) CHECK(principal_congruence(m3b(), a, b).is_total());
}

TEST_CASE("congruence generated") {
  CHECK(congruence_generated(four(), {}).is_identity());

  // 0 = 1 forces everything in a bounded lattice
  CHECK(congruence_generated(m3b(), {{0, 4}}).is_total());
  CHECK(congruence_generated(two_bounded_lattice(), {{0, 1}}).is_total());
}

TEST_CASE("all congruences against the brute-force partition oracle") {
  auto sq22 = product2(two(), two()).algebra;
  for (const FiniteAlgebra& a : {two(), four(), s_l(2), sq22, m3b(), n5b()}) {
    auto lat = all_congruences(a);
    auto brute = oracle::all_congruences_brute(a);
    CHECK(label_set(lat.elems) == label_set(brute));

    // least-congruence property of principals
    for (int x = 0; x < a.size(); ++x)
      for (int y = x + 1; y < a.size(); ++y) {
        Congruence p = principal_congruence(a, x, y);
        CHECK(lat.index_of(p) >= 0);
        for (const auto& th : lat.elems)
          if (th.same(x, y)) CHECK(p.refines(th));
      }
  }
}

TEST_CASE("the trivial algebra has one congruence") {
  auto lat = all_congruences(FiniteAlgebra::trivial(modal_signature()));
  CHECK(lat.elems.size() == 1);
  CHECK(lat.elems[0].is_total());
  CHECK(lat.elems[0].is_identity());
}

TEST_CASE("Con(4) is the three-element chain") {
  auto lat = all_congruences(four());
  REQUIRE(lat.elems.size() == 3);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      CHECK((lat.leq(i, j) || lat.leq(j, i)));
}

TEST_CASE("Con(4^2) is the 3x3 grid of product congruences") {
  auto sq = product2(four(), four());
  auto lat = all_congruences(sq.algebra);
  REQUIRE(lat.elems.size() == 9);

  auto lat4 = all_congruences(four());
  std::set<std::vector<int32_t>> expected;
  for (const auto& al : lat4.elems)
    for (const auto& be : lat4.elems) {
      std::vector<int32_t> label(16);
      for (int e = 0; e < 16; ++e)
        label[e] = al.block(sq.decode(e, 0)) * 4 + be.block(sq.decode(e, 1));
      expected.insert(Congruence::from_labels(label).labels());
    }
  CHECK(label_set(lat.elems) == expected);
  CHECK(lat.covers().size() == 12);
}

TEST_CASE("congruence lattice operations satisfy the lattice laws") {
  for (const FiniteAlgebra& a : {s_l(2), product2(four(), four()).algebra}) {
    auto lat = all_congruences(a);
    const int m = static_cast<int>(lat.elems.size());
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        CHECK(lat.meet_table[i][j] == lat.meet_table[j][i]);
        CHECK(lat.join_table[i][j] == lat.join_table[j][i]);
        CHECK(lat.meet_table[i][lat.join_table[i][j]] == i);
        CHECK(lat.join_table[i][lat.meet_table[i][j]] == i);
        for (int k = 0; k < m; ++k) {
          CHECK(lat.meet_table[i][lat.meet_table[j][k]] ==
                lat.meet_table[lat.meet_table[i][j]][k]);
          CHECK(lat.join_table[i][lat.join_table[j][k]] ==
                lat.join_table[lat.join_table[i][j]][k]);
        }
      }
  }
}

TEST_CASE("quotient kernels equal the congruence") {
  for (const FiniteAlgebra& a : {four(), s_l(2), m3b(), complex_closure(lev_poset(2))}) {
    for (const auto& th : all_congruences(a).elems) {
      auto q = quotient(a, th);
      CHECK(Congruence::from_labels(q.natural.map) == th);
    }
  }
}

TEST_CASE("subdirect irreducibility") {
  CHECK(is_subdirectly_irreducible(s_l(2)));
  CHECK(is_subdirectly_irreducible(m3b()));
  CHECK(is_subdirectly_irreducible(four()));  // 3-chain congruence lattice

  auto sq = product2(two(), two()).algebra;
  CHECK_FALSE(is_subdirectly_irreducible(sq));
  // exhibit two non-identity congruences meeting in the identity
  auto lat = all_congruences(sq);
  bool found = false;
  for (const auto& a : lat.elems)
    for (const auto& b : lat.elems)
      if (!a.is_identity() && !b.is_identity() && a.meet(b).is_identity()) found = true;
  CHECK(found);

  CHECK_THROWS_AS(is_subdirectly_irreducible(FiniteAlgebra::trivial(modal_signature())),
                  PreconditionError);
}

TEST_CASE("simplicity") {
  CHECK(is_simple(m3b()));
  CHECK(is_simple(two()));
  CHECK(is_simple(s_l(2)));
  CHECK_FALSE(is_simple(four()));
  CHECK_THROWS_AS(is_simple(FiniteAlgebra::trivial(modal_signature())), PreconditionError);
}

TEST_CASE("relative principal congruences") {
  // no homomorphisms S2 -> 2 at all: empty intersection is the total relation
  auto K2 = make_variety({two()}, ClassMode::Quasivariety);
  CHECK(relative_principal(s_l(2), K2, {}).is_total());

  // identity map kernel
  auto KS = make_variety({s_l(2)}, ClassMode::Quasivariety);
  CHECK(relative_principal(s_l(2), KS, {}).is_identity());

  // kernel of the second projection of the lattice square
  auto sq = product2(two_bounded_lattice(), two_bounded_lattice()).algebra;
  auto KL = make_variety({two_bounded_lattice()}, ClassMode::Quasivariety);
  Congruence th = relative_principal(sq, KL, {{1, 3}});
  CHECK(th.labels() == std::vector<int32_t>{0, 1, 0, 1});

  // brute-force cross-check: least compatible partition with a member quotient
  auto lat = all_congruences(sq);
  Congruence best = Congruence::total(4);
  for (const auto& cand : lat.elems) {
    if (!cand.same(1, 3)) continue;
    auto q = quotient(sq, cand);
    if (in_quasivariety(q.algebra, KL).member) best = best.meet(cand);
  }
  CHECK(best == th);
}

TEST_CASE("relative principal contains the absolute congruence") {
  auto sq = product2(two_bounded_lattice(), two_bounded_lattice()).algebra;
  auto KL = make_variety({two_bounded_lattice()}, ClassMode::Quasivariety);
  std::vector<std::pair<int, int>> H = {{1, 3}};
  Congruence rel = relative_principal(sq, KL, H);
  CHECK(congruence_generated(sq, H).refines(rel));
  auto q = quotient(sq, rel);
  CHECK(in_quasivariety(q.algebra, KL).member);
}

TEST_CASE("relative subdirect irreducibility") {
  auto KS = make_variety({s_l(2)}, ClassMode::Quasivariety);
  CHECK(is_relative_si(s_l(2), KS).si);
  CHECK(is_relative_si(two(), KS).si);

  auto K2 = make_variety({two()}, ClassMode::Quasivariety);
  auto sq = product2(two(), two()).algebra;
  CHECK_FALSE(is_relative_si(sq, K2).si);

  // membership precondition: S2 is not in Q(2)
  CHECK_THROWS_AS(is_relative_si(s_l(2), K2), PreconditionError);
}

TEST_CASE("every congruence of a free algebra is a variety congruence") {
  auto K = make_variety({two()});
  auto F = free_algebra(K, 1);
  REQUIRE(F.dense);
  for (const auto& th : all_congruences(*F.dense).elems) {
    auto q = quotient(*F.dense, th);
    CHECK(in_variety(q.algebra, K).verdict == Tri::Yes);
  }
}

TEST_CASE("appendix relations on the free algebra present the square of 4") {
  auto K = make_variety({four()});
  auto F = free_algebra(K, 1);
  REQUIRE(F.dense);
  const Signature& sig = K.signature();
  std::vector<int> g(F.generators.begin(), F.generators.end());
  auto at = [&](const char* s) { return eval_term(*F.dense, parse_term(sig, s), g); };
  std::vector<std::pair<int, int>> pairs = {
      {at("(box (dia (box v0)))"), at("(dia (box v0))")},
      {at("(and (dia (box v0)) v0)"), at("(box v0)")},
      {at("(or (dia (box v0)) v0)"), at("(dia v0)")},
  };
  Congruence th = congruence_generated(*F.dense, pairs);
  auto q = quotient(*F.dense, th);
  CHECK(is_isomorphic(q.algebra, product2(four(), four()).algebra));
}

TEST_CASE("congruences of random algebras match the partition oracle") {
  std::mt19937 rng(271828);
  Signature sig({{"f", 2}, {"g", 1}});
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    std::vector<int32_t> f(static_cast<size_t>(n) * n), g(n);
    for (auto& v : f) v = static_cast<int32_t>(rng() % n);
    for (auto& v : g) v = static_cast<int32_t>(rng() % n);
    FiniteAlgebra A(sig, n, {std::move(f), std::move(g)}, "rnd");
    auto lat = all_congruences(A);
    auto brute = oracle::all_congruences_brute(A);
    CHECK(label_set(lat.elems) == label_set(brute));
    // quotient kernels recover each congruence
    for (const auto& th : lat.elems)
      CHECK(Congruence::from_labels(quotient(A, th).natural.map) == th);
  }
}
