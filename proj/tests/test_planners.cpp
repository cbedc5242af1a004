#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "analogmp/planner.hpp"
#include "analogmp/transport.hpp"

using namespace analogmp;

namespace {

// Checks the section property at the planner's evaluation times.
void check_section(const AnalogPlanner& pl, const std::vector<Vec>& in,
                   double tol = kSectionTol) {
  auto mu = pl(in);
  auto times = pl.eval_times();
  for (const auto& [g, w] : mu.atoms) {
    if (pl.arity == 1) {
      CHECK(pl.space.distance(pl.space.eval_path(g, 0.0),
                              pl.space.canonical(pl.basepoint)) <= tol);
      CHECK(pl.space.distance(pl.space.eval_path(g, 1.0),
                              pl.space.canonical(in[0])) <= tol);
    } else {
      for (int i = 0; i < pl.arity; ++i)
        CHECK(pl.space.distance(pl.space.eval_path(g, times[i]),
                                pl.space.canonical(in[i])) <= tol);
    }
  }
  CHECK(mu.total() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(static_cast<int>(mu.support_size()) <= pl.support_bound);
}

}  // namespace

TEST_CASE("rp_tc: equal inputs give a single constant atom") {
  auto pl = rp_tc_planner(2);
  Vec x = pl.space.canonical({1.0, 2.0, -1.0});
  auto mu = pl({x, x});
  // theta = 1 kills the second atom.
  CHECK(mu.support_size() == 1);
  CHECK(mu.atoms[0].second == doctest::Approx(1.0));
  CHECK(pl.space.close(pl.space.eval_path(mu.atoms[0].first, 0.5), x));
}

TEST_CASE("rp_tc: orthogonal classes split the mass evenly") {
  auto pl = rp_tc_planner(2);
  Vec u = {1, 0, 0}, v = {0, 1, 0};
  auto mu = pl({u, v});
  REQUIRE(mu.support_size() == 2);
  CHECK(mu.atoms[0].second == doctest::Approx(0.5));
  CHECK(mu.atoms[1].second == doctest::Approx(0.5));
  check_section(pl, {u, v});
}

TEST_CASE("rp_tc: theta = 1/sqrt(2) weights and lengths") {
  auto pl = rp_tc_planner(3);
  double r = 1.0 / std::sqrt(2.0);
  Vec u = {1, 0, 0, 0}, v = {r, r, 0, 0};
  auto mu = pl({u, v});
  REQUIRE(mu.support_size() == 2);
  // Atom order is deterministic; identify by weight.
  double w_short = 0.5 * (1.0 + r), w_long = 0.5 * (1.0 - r);
  double len0 = mu.atoms[0].first.length(), len1 = mu.atoms[1].first.length();
  bool first_is_short = std::abs(len0 - kPi / 4) < 1e-9;
  REQUIRE((first_is_short || std::abs(len1 - kPi / 4) < 1e-9));
  const auto& short_atom = first_is_short ? mu.atoms[0] : mu.atoms[1];
  const auto& long_atom = first_is_short ? mu.atoms[1] : mu.atoms[0];
  CHECK(short_atom.second == doctest::Approx(w_short).epsilon(1e-12));
  CHECK(long_atom.second == doctest::Approx(w_long).epsilon(1e-12));
  CHECK(long_atom.first.length() == doctest::Approx(3 * kPi / 4).epsilon(1e-12));
  check_section(pl, {u, v});
}

TEST_CASE("circle_tc: coincident inputs, antipodal tie, quarter gap") {
  auto pl = circle_tc_planner();
  auto same = pl({{1.0}, {1.0}});
  CHECK(same.support_size() == 1);

  auto tie = pl({{0.0}, {kPi}});
  REQUIRE(tie.support_size() == 2);
  CHECK(tie.atoms[0].second == doctest::Approx(0.5));
  CHECK(tie.atoms[1].second == doctest::Approx(0.5));

  auto quarter = pl({{0.0}, {kPi / 2}});
  REQUIRE(quarter.support_size() == 2);
  double wccw = 1.0 - (kPi / 2) / (2 * kPi);
  bool first_ccw = std::abs(quarter.atoms[0].second - wccw) < 1e-12;
  const auto& ccw = first_ccw ? quarter.atoms[0] : quarter.atoms[1];
  const auto& cw = first_ccw ? quarter.atoms[1] : quarter.atoms[0];
  CHECK(ccw.second == doctest::Approx(0.75));
  CHECK(cw.second == doctest::Approx(0.25));
  CHECK(ccw.first.length() == doctest::Approx(kPi / 2));
  CHECK(cw.first.length() == doctest::Approx(3 * kPi / 2));
  check_section(pl, {{0.0}, {kPi / 2}});
}

TEST_CASE("sphere_acat: basepoint, antipode, and orthogonal targets") {
  auto pl = acat_sphere_planner(2);
  Vec x0 = pl.basepoint;
  CHECK(pl({x0}).support_size() == 1);

  auto anti = pl({negated(x0)});
  CHECK(anti.support_size() == 1);
  CHECK(anti.atoms[0].second == doctest::Approx(1.0));
  check_section(pl, {negated(x0)});

  Vec y = {0, 0, 1};
  auto mu = pl({y});
  REQUIRE(mu.support_size() == 2);
  CHECK(mu.atoms[0].second == doctest::Approx(0.5));
  CHECK(mu.atoms[1].second == doctest::Approx(0.5));
  check_section(pl, {y});
}

TEST_CASE("sphere_tc odd d: antipodal pair is handled by the field rule") {
  auto pl = sphere_tc_planner(3);
  std::mt19937_64 rng(9);
  Vec x = pl.space.random_point(rng);
  auto mu = pl({x, negated(x)});
  CHECK(mu.support_size() == 1);  // the shortest-arc weight vanishes
  check_section(pl, {x, negated(x)});
  for (int i = 0; i < 100; ++i) {
    std::vector<Vec> in = {pl.space.random_point(rng),
                           pl.space.random_point(rng)};
    check_section(pl, in);
  }
}

TEST_CASE("sphere_tc even d: three-rule partition covers everything") {
  auto pl = sphere_tc_planner(2);
  CHECK(pl.support_bound == 3);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    std::vector<Vec> in = (i % 3 == 0) ? pl.stress_input(rng)
                                       : std::vector<Vec>{pl.space.random_point(rng),
                                                          pl.space.random_point(rng)};
    check_section(pl, in);
  }
}

TEST_CASE("pou_section rejects broken partitions") {
  AtomOps<GeoPath> ops = path_ops(Space::circle());
  PouRule<double> r1;
  r1.membership = [](double) { return true; };
  r1.section = [](double) { return constant_path({1.0, 0.0}); };
  r1.bump = [](double) { return 0.5; };
  CHECK_THROWS_AS(pou_section<double>({r1}, 0.0, ops), PartitionNotUnity);

  PouRule<double> r2 = r1;
  r2.bump = [](double) { return 1.0; };
  r2.membership = [](double) { return false; };
  CHECK_THROWS_AS(pou_section<double>({r2}, 0.0, ops), RuleOutsideDomain);

  r2.membership = [](double) { return true; };
  auto mu = pou_section<double>({r2}, 0.0, ops);
  CHECK(mu.support_size() == 1);
}

TEST_CASE("naive_rp passes the section check but is discontinuous by design") {
  auto pl = naive_rp_planner(2);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i)
    check_section(pl, {pl.space.random_point(rng), pl.space.random_point(rng)});
}

// ---------------------------------------------------------------------------
// Transfers

TEST_CASE("acat_cover_transfer over the identity cover is the inner planner") {
  auto inner = acat_sphere_planner(2);
  auto t = acat_cover_transfer(identity_cover(inner.space), inner);
  CHECK(t.support_bound == inner.support_bound);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 30; ++i) {
    Vec y = inner.space.random_point(rng);
    CHECK(path_measure_distance(inner.space, t({y}), inner({y})) <= 1e-9);
  }
}

TEST_CASE("acat transfer along the antipodal cover") {
  auto t = acat_cover_transfer(antipodal_cover(2), acat_sphere_planner(2));
  CHECK(t.support_bound == 4);
  std::mt19937_64 rng(43);
  for (int i = 0; i < 100; ++i) {
    Vec x = t.space.random_point(rng);
    check_section(t, {x});
  }
}

TEST_CASE("equivariant transfer: lift invariance and section") {
  CoveringMap cov = antipodal_cover(2);
  auto inner = sphere_tc_planner(2);
  auto t = equivariant_tc_transfer(cov, inner);
  CHECK(t.support_bound == 6);
  std::mt19937_64 rng(47);
  for (int i = 0; i < 50; ++i) {
    Vec x = t.space.random_point(rng), y = t.space.random_point(rng);
    check_section(t, {x, y});
    // Recompute with the opposite lift of the first input: the deck average
    // must not notice.
    auto f1 = fiber(cov, x), f2 = fiber(cov, y);
    std::vector<std::pair<GeoPath, double>> raw;
    for (int g = 0; g < cov.deck_order; ++g) {
      auto m = inner.plan({f1[1], cov.deck(g, f2[1])});
      for (const auto& [gp, w] : m.atoms)
        raw.emplace_back(project_path(cov, gp), w / cov.degree);
    }
    auto flipped = normalize(std::move(raw), path_ops(cov.base));
    CHECK(path_measure_distance(cov.base, t({x, y}), flipped) <= 1e-7);
  }
}

TEST_CASE("equivariant transfer rejects non-equivariant inner planners") {
  // A based-style arity-2 planner that routes through a fixed waypoint is
  // not deck equivariant on the sphere.
  AnalogPlanner bad;
  bad.name = "fixed_waypoint";
  bad.space = Space::sphere(2);
  bad.arity = 2;
  bad.support_bound = 1;
  Space sp = bad.space;
  bad.plan = [sp](const std::vector<Vec>& in) {
    Vec m = {0, 0, 1};
    return dirac(concat(arc_between(sp.canonical(in[0]), m),
                        arc_between(m, sp.canonical(in[1]))));
  };
  CHECK_THROWS_AS(equivariant_tc_transfer(antipodal_cover(2), bad),
                  EquivarianceViolation);
}

TEST_CASE("generic transfer: degree^r averaging still sections") {
  auto t = generic_tc_transfer(antipodal_cover(2), sphere_tc_planner(2));
  CHECK(t.support_bound == 12);
  std::mt19937_64 rng(53);
  std::size_t max_support = 0;
  for (int i = 0; i < 50; ++i) {
    Vec x = t.space.random_point(rng), y = t.space.random_point(rng);
    auto mu = t({x, y});
    max_support = std::max(max_support, mu.support_size());
    check_section(t, {x, y});
  }
  CHECK(max_support <= 12);
}

TEST_CASE("product planner pairs components and multiplies weights") {
  auto t = product_planner(circle_tc_planner(), circle_tc_planner());
  CHECK(t.support_bound == 4);
  std::mt19937_64 rng(59);
  for (int i = 0; i < 50; ++i) {
    std::vector<Vec> in = {t.space.random_point(rng), t.space.random_point(rng)};
    check_section(t, in);
  }
  // Marginal behavior: evaluating component 0 of each atom reproduces a
  // circle planner atom set.
  auto base = circle_tc_planner();
  auto mu = t({{0.0, 1.0}, {kPi / 2, 1.0}});
  auto mu1 = base(std::vector<Vec>{{0.0}, {kPi / 2}});
  std::vector<std::pair<GeoPath, double>> raw;
  for (const auto& [g, w] : mu.atoms) raw.emplace_back(g.comps[0], w);
  auto proj = normalize(std::move(raw), path_ops(base.space));
  CHECK(path_measure_distance(base.space, proj, mu1) <= 1e-9);
}

TEST_CASE("chain planner pins junctions at i/(r-1)") {
  auto t = chain_planner(circle_tc_planner(), 3);
  CHECK(t.arity == 3);
  CHECK(t.support_bound == 4);
  std::mt19937_64 rng(61);
  for (int i = 0; i < 50; ++i) {
    std::vector<Vec> in = {t.space.random_point(rng), t.space.random_point(rng),
                           t.space.random_point(rng)};
    check_section(t, in);
  }
  CHECK_THROWS_AS(chain_planner(acat_sphere_planner(2), 3), ArityMismatch);
  CHECK_THROWS_AS(chain_planner(circle_tc_planner(), 2), ArityMismatch);
}

TEST_CASE("planner operator() enforces arity") {
  auto pl = circle_tc_planner();
  CHECK_THROWS_AS(pl({{0.0}}), ArityMismatch);
}
