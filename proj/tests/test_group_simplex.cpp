#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "analogmp/group_simplex.hpp"

using namespace analogmp;

TEST_CASE("cyclic and dihedral constructors verify their tables") {
  auto c5 = FiniteGroup::cyclic(5);
  CHECK(c5.size() == 5);
  CHECK(c5.element_order(1) == 5);
  CHECK(c5.mul(3, 4) == 2);

  auto d4 = FiniteGroup::dihedral(4);
  CHECK(d4.size() == 8);
  // A reflection squares to the identity.
  int s = 4;  // encoded flip with zero rotation
  CHECK(d4.mul(s, s) == d4.identity());
}

TEST_CASE("from_table rejects broken tables") {
  // A 2x2 table with no identity row.
  CHECK_THROWS(FiniteGroup::from_table({"a", "b"}, {{1, 1}, {1, 1}}));
  // Non-associative magma on 3 elements (rock-paper-scissors with identity
  // patched in fails associativity).
  CHECK_THROWS(FiniteGroup::from_table(
      {"e", "r", "p"}, {{0, 1, 2}, {1, 1, 0}, {2, 1, 2}}));
}

TEST_CASE("parse reads a plain multiplication table") {
  // Klein four group; first row must be the identity row.
  const char* text =
      "e a b c\n"
      "a e c b\n"
      "b c e a\n"
      "c b a e\n";
  auto v4 = FiniteGroup::parse(text);
  CHECK(v4.size() == 4);
  for (int g = 1; g < 4; ++g) CHECK(v4.element_order(g) == 2);
  CHECK(v4.labels()[2] == "b");
  CHECK(v4.mul(1, 2) == 3);
}

TEST_CASE("quaternion group has the right order spectrum") {
  auto q8 = FiniteGroup::quaternion8();
  CHECK(q8.size() == 8);
  int order2 = 0, order4 = 0;
  for (int g = 0; g < 8; ++g) {
    if (g == q8.identity()) continue;
    int m = q8.element_order(g);
    CHECK((m == 2 || m == 4));
    (m == 2 ? order2 : order4)++;
  }
  CHECK(order2 == 1);  // only -1
  CHECK(order4 == 6);
}

TEST_CASE("act is a left action with exact rational weights") {
  auto d3 = FiniteGroup::dihedral(3);
  SimplexPoint xi = normalize<int, Rat>(
      {{0, Rat(1, 2)}, {1, Rat(1, 3)}, {3, Rat(1, 6)}}, int_ops());
  for (int g = 0; g < d3.size(); ++g) {
    for (int h = 0; h < d3.size(); ++h) {
      auto lhs = act(d3, g, act(d3, h, xi));
      auto rhs = act(d3, d3.mul(g, h), xi);
      CHECK(measures_equal(lhs, rhs, int_ops(), Rat(0)));
    }
  }
  CHECK(measures_equal(act(d3, d3.identity(), xi), xi, int_ops(), Rat(0)));
  // The action permutes atoms; it never changes the skeleton index.
  CHECK(skeleton_index(act(d3, 2, xi)) == skeleton_index(xi));
}

TEST_CASE("torsion witnesses are exactly fixed") {
  for (auto G : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(6),
                 FiniteGroup::dihedral(4), FiniteGroup::quaternion8()}) {
    for (int g = 0; g < G.size(); ++g) {
      if (g == G.identity()) continue;
      auto xi = torsion_fixed_point_witness(G, g);
      CHECK(xi.total() == Rat(1));
      CHECK(static_cast<int>(xi.support_size()) == G.element_order(g));
      CHECK(measures_equal(act(G, g, xi), xi, int_ops(), Rat(0)));
    }
  }
  auto c2 = FiniteGroup::cyclic(2);
  auto xi = torsion_fixed_point_witness(c2, 1);
  CHECK(xi.mass(0, int_ops()) == Rat(1, 2));
  CHECK(xi.mass(1, int_ops()) == Rat(1, 2));
  CHECK_THROWS(torsion_fixed_point_witness(c2, c2.identity()));
}

TEST_CASE("free_action_probe_group finds a fixed point in any finite group") {
  for (auto G : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(7),
                 FiniteGroup::dihedral(3)}) {
    auto rep = free_action_probe_group(G, 4);
    CHECK(rep.searched_finite_group);
    CHECK(rep.grid_points_checked > 0);
    CHECK(rep.fixed_points_found > 0);
    REQUIRE(rep.exemplar.has_value());
    auto [g, xi] = *rep.exemplar;
    CHECK(measures_equal(act(G, g, xi), xi, int_ops(), Rat(0)));
  }
}

TEST_CASE("free_action_probe_shift finds no fixed points") {
  auto rep = free_action_probe_shift(4, 9);
  CHECK(!rep.searched_finite_group);
  CHECK(rep.grid_points_checked > 0);
  CHECK(rep.fixed_points_found == 0);
}
