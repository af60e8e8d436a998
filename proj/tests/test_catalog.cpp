#include <doctest.h>

#include "asck/catalog.hpp"
#include "asck/congruence.hpp"
#include "asck/structure.hpp"

using namespace asck;

namespace {

int box_of(const FiniteAlgebra& m, int e) {
  int nt = m.signature().index_of("not"), dia = m.signature().index_of("dia");
  return m.apply1(nt, m.apply1(dia, m.apply1(nt, e)));
}

// every strict order on n labeled points, as Poset values
std::vector<Poset> all_posets(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) slots.emplace_back(a, b);
  std::vector<Poset> out;
  const long total = 1L << slots.size();
  for (long mask = 0; mask < total; ++mask) {
    Poset p;
    p.size = n;
    p.lt.assign(static_cast<size_t>(n) * n, 0);
    for (size_t s = 0; s < slots.size(); ++s)
      if (mask & (1L << s)) p.lt[static_cast<size_t>(slots[s].first) * n + slots[s].second] = 1;
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) {
        if (p.less(a, b) && p.less(b, a)) ok = false;
        for (int c = 0; c < n && ok; ++c)
          if (p.less(a, b) && p.less(b, c) && !p.less(a, c)) ok = false;
      }
    if (ok) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

TEST_CASE("the catalog closure algebras match their diagrams") {
  FiniteAlgebra s2 = s_l(2);
  CHECK(s2.size() == 4);
  int dia = s2.signature().index_of("dia");
  // atoms 1 and 2: dia takes them to the top, box to the bottom
  CHECK(s2.apply1(dia, 1) == 3);
  CHECK(s2.apply1(dia, 2) == 3);
  CHECK(box_of(s2, 1) == 0);
  CHECK(box_of(s2, 2) == 0);

  CHECK(is_isomorphic(s_l(1), two()));
  CHECK_THROWS_AS(s_l(0), PreconditionError);

  FiniteAlgebra f = four();
  // clopen bounds, one open atom, one closed atom
  CHECK(f.apply1(dia, 0) == 0);
  CHECK(f.apply1(dia, 3) == 3);
  CHECK(box_of(f, 1) == 1);
  CHECK(f.apply1(dia, 1) == 3);
  CHECK(f.apply1(dia, 2) == 2);
  CHECK(box_of(f, 2) == 0);

  FiniteAlgebra m = s43m();
  // open elements form a chain 0 < c < 1
  auto opens = open_elements(m);
  CHECK(opens == std::vector<int>{0, 4, 7});
  CHECK(m.apply1(dia, 3) == 3);  // the two-point cluster is closed
  CHECK(is_closure_algebra(m));
}

TEST_CASE("the bounded lattices m3b and n5b") {
  FiniteAlgebra m = m3b();
  CHECK(m.size() == 5);
  // three incomparable middles: pairwise meet 0, join 1
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      if (a == b) continue;
      CHECK(m.apply2(0, a, b) == 0);
      CHECK(m.apply2(1, a, b) == 4);
    }
  CHECK(is_simple(m));

  FiniteAlgebra n = n5b();
  CHECK(n.size() == 5);
  CHECK(n.apply2(0, 1, 3) == 1);  // a < c
  CHECK(n.apply2(1, 1, 3) == 3);
  CHECK(n.apply2(0, 1, 2) == 0);
  CHECK(n.apply2(1, 2, 3) == 4);
  CHECK(is_subdirectly_irreducible(n));
}

TEST_CASE("lev posets") {
  CHECK(lev_poset(1).size == 1);
  CHECK(lev_poset(2).size == 3);
  CHECK(lev_poset(3).size == 7);
  CHECK_THROWS_AS(lev_poset(0), PreconditionError);

  Poset p = lev_poset(2);
  p.validate();
  CHECK(p.less(0, 1));
  CHECK(p.less(0, 2));
  CHECK_FALSE(p.less(1, 2));
  CHECK_FALSE(p.less(2, 1));
}

TEST_CASE("up-set Heyting algebras") {
  FiniteAlgebra h = upset_heyting(lev_poset(2));
  CHECK(h.size() == 5);
  int imp = h.signature().index_of("imp");
  int oor = h.signature().index_of("or");
  // two atoms a, not a with a or not a the coatom, strictly below one
  int a = 1;  // up-set {p}
  int na = h.apply2(imp, a, h.apply0(h.signature().index_of("zero")));
  CHECK(na != 0);
  int coatom = h.apply2(oor, a, na);
  CHECK(coatom != h.apply0(h.signature().index_of("one")));

  CHECK(upset_heyting(antichain_poset(1)).size() == 2);
  FiniteAlgebra sq = upset_heyting(antichain_poset(2));
  CHECK(sq.size() == 4);
  // Boolean: every element complemented
  for (int e = 0; e < 4; ++e) {
    int ne = sq.apply2(imp, e, 0);
    CHECK(sq.apply2(oor, e, ne) == sq.apply0(sq.signature().index_of("one")));
  }
}

TEST_CASE("complex closure algebras") {
  FiniteAlgebra b = complex_closure(lev_poset(2));
  CHECK(b.size() == 8);
  CHECK(open_elements(b).size() == 5);
  int dia = b.signature().index_of("dia");
  // atoms: {bottom} = 1 closed, {p} = 2 and {q} = 4 open
  CHECK(b.apply1(dia, 1) == 1);
  CHECK(box_of(b, 2) == 2);
  CHECK(box_of(b, 4) == 4);
  CHECK(b.apply1(dia, 2) == 3);  // down closure adds the bottom point

  CHECK(complex_closure(antichain_poset(1)).size() == 2);
  FiniteAlgebra csq = complex_closure(antichain_poset(2));
  CHECK(csq.size() == 4);
  for (int e = 0; e < 4; ++e) CHECK(csq.apply1(dia, e) == e);  // monadic, dia identity
}

TEST_CASE("open elements of the complex algebra recover the up-set algebra") {
  // lev posets, then every labeled poset with up to 5 points
  std::vector<Poset> posets;
  for (int n = 1; n <= 3; ++n) posets.push_back(lev_poset(n));
  for (int n = 1; n <= 5; ++n)
    for (auto& p : all_posets(n)) posets.push_back(std::move(p));

  for (const Poset& p : posets) {
    FiniteAlgebra b = complex_closure(p);
    FiniteAlgebra oh = open_heyting(b);
    FiniteAlgebra uh = upset_heyting(p);
    REQUIRE(is_isomorphic(oh, uh));
    // closure axioms, exhaustively
    int dia = b.signature().index_of("dia");
    int oor = b.signature().index_of("or");
    int aand = b.signature().index_of("and");
    for (int x = 0; x < b.size(); ++x) {
      int dx = b.apply1(dia, x);
      REQUIRE(b.apply2(aand, x, dx) == x);
      REQUIRE(b.apply1(dia, dx) == dx);
      for (int y = 0; y < b.size(); ++y)
        REQUIRE(b.apply1(dia, b.apply2(oor, x, y)) ==
                b.apply2(oor, dx, b.apply1(dia, y)));
    }
    // residuation law of the up-set algebra
    REQUIRE(classify(uh).heyting);
  }
}

TEST_CASE("open_heyting on catalog algebras") {
  CHECK(is_isomorphic(open_heyting(two()), upset_heyting(antichain_poset(1))));
  CHECK(open_heyting(s_l(2)).size() == 2);  // only bottom and top are open
  CHECK(is_isomorphic(open_heyting(complex_closure(lev_poset(2))),
                      upset_heyting(lev_poset(2))));
  CHECK_THROWS_AS(open_heyting(m3b()), PreconditionError);
}

TEST_CASE("s_l algebras are simple with trivial closed elements") {
  for (int l = 1; l <= 3; ++l) {
    FiniteAlgebra s = s_l(l);
    CHECK(is_simple(s));
    int dia = s.signature().index_of("dia");
    for (int e = 0; e < s.size(); ++e) {
      bool closed = s.apply1(dia, e) == e;
      CHECK(closed == (e == 0 || e == s.size() - 1));
    }
    CHECK(all_congruences(s).elems.size() == 2);
  }
}

TEST_CASE("classification flags") {
  auto rs2 = classify(s_l(2));
  CHECK(rs2.closure);
  CHECK(rs2.monadic);
  CHECK_FALSE(rs2.mckinsey);
  CHECK(rs2.s2_embedding.has_value());
  CHECK_FALSE(rs2.four_witness.has_value());

  auto rb = classify(complex_closure(lev_poset(2)));
  CHECK(rb.closure);
  CHECK(rb.mckinsey);
  CHECK_FALSE(rb.monadic);
  // the open coatom witnesses dia box a > box a
  FiniteAlgebra b = complex_closure(lev_poset(2));
  bool witness = false;
  for (int a = 0; a < b.size(); ++a)
    if (b.apply1(b.signature().index_of("dia"), box_of(b, a)) != box_of(b, a)) witness = true;
  CHECK(witness);
  CHECK(rb.four_witness.has_value());  // the open coatom generates a copy of 4

  auto r4 = classify(four());
  CHECK(r4.closure);
  CHECK(r4.mckinsey);
  CHECK_FALSE(r4.monadic);
  CHECK(r4.four_witness.has_value());
  CHECK_FALSE(r4.s2_embedding.has_value());

  auto rm = classify(m3b());
  CHECK(rm.bounded_lattice);
  CHECK_FALSE(rm.modal);  // no not/dia in the signature

  auto rh = classify(upset_heyting(lev_poset(2)));
  CHECK(rh.bounded_lattice);
  CHECK(rh.heyting);

  FiniteAlgebra bad(Signature({{"f", 1}}), 2, {{1, 0}});
  CHECK_THROWS_AS(classify(bad), PreconditionError);
}

TEST_CASE("four-witness scan matches embedding existence") {
  // d with d < dia d = 1 and dia(not d) = not d is exactly an embedded copy of 4
  for (const FiniteAlgebra& m :
       {two(), s_l(2), s_l(3), four(), s43m(), complex_closure(lev_poset(2)),
        complex_closure(lev_poset(3)), product2(four(), four()).algebra}) {
    auto rep = classify(m);
    HomQuery q;
    q.mode = HomMode::Injective;
    bool embeds = homs(four(), m, q).found();
    CHECK(rep.four_witness.has_value() == embeds);
  }
}

TEST_CASE("poset validation") {
  Poset bad;
  bad.size = 2;
  bad.lt = {0, 1, 1, 0};  // 0<1 and 1<0
  CHECK_THROWS_AS(bad.validate(), ParseError);
  Poset loop;
  loop.size = 1;
  loop.lt = {1};
  CHECK_THROWS_AS(loop.validate(), ParseError);
}
