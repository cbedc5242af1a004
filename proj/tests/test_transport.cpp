#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "analogmp/geometry.hpp"
#include "analogmp/transport.hpp"

using namespace analogmp;

namespace {

Measure<int> im(std::vector<std::pair<int, double>> raw) {
  return normalize(std::move(raw), int_ops());
}

double line_metric(int a, int b) { return std::abs(a - b); }

Measure<int> random_grid_measure(std::mt19937_64& rng, int max_atoms) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<std::pair<int, double>> raw;
  int n = 1 + int(rng() % max_atoms);
  double tot = 0.0;
  for (int i = 0; i < n; ++i) {
    double w = u(rng);
    raw.emplace_back(int(rng() % 64), w);
    tot += w;
  }
  for (auto& [a, w] : raw) w /= tot;
  return normalize(std::move(raw), int_ops());
}

}  // namespace

TEST_CASE("wasserstein1: identical measures cost nothing") {
  auto mu = im({{0, 0.3}, {5, 0.7}});
  CHECK(wasserstein1(mu, mu, line_metric) == doctest::Approx(0.0));
}

TEST_CASE("wasserstein1: diracs pay the ground distance") {
  CHECK(wasserstein1(dirac(0), dirac(7), line_metric) == doctest::Approx(7.0));
}

TEST_CASE("wasserstein1: hand-solved 2x2 instance") {
  // mu = 0.3 d0 + 0.7 d1, nu = 0.6 d0 + 0.4 d1 on the line: move 0.3 of
  // mass one step, so W1 = 0.3. (Both feasible bases give >= 0.3.)
  auto mu = im({{0, 0.3}, {1, 0.7}});
  auto nu = im({{0, 0.6}, {1, 0.4}});
  auto plan = wasserstein1_plan(mu, nu, line_metric);
  CHECK(plan.cost == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(w1_oracle(mu, nu, line_metric) == doctest::Approx(0.3).epsilon(1e-12));

  // The coupling has the right marginals.
  double row0 = plan.at(0, 0) + plan.at(0, 1);
  double col0 = plan.at(0, 0) + plan.at(1, 0);
  CHECK(row0 == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(col0 == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("wasserstein1 agrees with the brute-force oracle") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 200; ++i) {
    auto mu = random_grid_measure(rng, 3);
    auto nu = random_grid_measure(rng, 3);
    double fast = wasserstein1(mu, nu, line_metric);
    double slow = w1_oracle(mu, nu, line_metric);
    CHECK(std::abs(fast - slow) <= 1e-9);
  }
}

TEST_CASE("wasserstein1 metric axioms on sampled triples") {
  std::mt19937_64 rng(202);
  for (int i = 0; i < 300; ++i) {
    auto a = random_grid_measure(rng, 4);
    auto b = random_grid_measure(rng, 4);
    auto c = random_grid_measure(rng, 4);
    double ab = wasserstein1(a, b, line_metric);
    double ba = wasserstein1(b, a, line_metric);
    double ac = wasserstein1(a, c, line_metric);
    double cb = wasserstein1(c, b, line_metric);
    CHECK(std::abs(ab - ba) <= 1e-9);
    CHECK(ab <= ac + cb + 1e-9);
    CHECK(wasserstein1(a, a, line_metric) <= 1e-12);
  }
}

TEST_CASE("wasserstein1 rejects oversized supports") {
  std::vector<std::pair<int, double>> raw;
  for (int i = 0; i < 65; ++i) raw.emplace_back(i, 1.0 / 65.0);
  auto mu = normalize(std::move(raw), int_ops());
  CHECK_THROWS_AS(wasserstein1(mu, dirac(0), line_metric), SupportTooLarge);
}

TEST_CASE("levy_prokhorov: identical measures are at distance 0") {
  auto mu = im({{0, 0.5}, {3, 0.5}});
  CHECK(levy_prokhorov(mu, mu, line_metric) <= 1e-9);
}

TEST_CASE("levy_prokhorov between diracs is min(distance, 1)") {
  CHECK(levy_prokhorov(dirac(0), dirac(7), line_metric) ==
        doctest::Approx(1.0).epsilon(1e-6));
  auto scaled = [](int a, int b) { return 0.1 * std::abs(a - b); };
  CHECK(levy_prokhorov(dirac(0), dirac(3), scaled) ==
        doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("levy_prokhorov of an epsilon contamination") {
  // nu = (1 - eps) mu + eps delta_far differs from mu by eps in LP, since
  // the contaminating mass is farther than eps away.
  double eps = 0.125;
  auto mu = dirac(0);
  auto nu = im({{0, 1 - eps}, {40, eps}});
  CHECK(levy_prokhorov(mu, nu, line_metric) == doctest::Approx(eps).epsilon(1e-6));
}

TEST_CASE("levy_prokhorov respects the W1 upper bound on bounded metrics") {
  // On a diameter <= 1 metric, LP <= sqrt(W1).
  auto unit = [](int a, int b) { return std::min(1.0, 0.02 * std::abs(a - b)); };
  std::mt19937_64 rng(303);
  for (int i = 0; i < 100; ++i) {
    auto mu = random_grid_measure(rng, 4);
    auto nu = random_grid_measure(rng, 4);
    double lp = levy_prokhorov(mu, nu, unit);
    double w1 = wasserstein1(mu, nu, unit);
    CHECK(lp <= std::sqrt(w1) + 1e-6);
    CHECK(lp >= -1e-12);
    CHECK(lp <= 1.0 + 1e-9);
  }
}

TEST_CASE("path_measure_distance separates distinct path measures") {
  Space s1 = Space::circle();
  auto gs = s1.geodesics({0.0}, {kPi});
  REQUIRE(gs.size() == 2);
  auto ops = path_ops(s1);
  auto both = normalize<GeoPath, double>(
      {{gs[0].first, 0.5}, {gs[1].first, 0.5}}, ops);
  auto one = dirac<GeoPath>(gs[0].first);
  CHECK(path_measure_distance(s1, one, one) <= 1e-12);
  double d = path_measure_distance(s1, both, one);
  // Half the mass must travel between the two half circles; their sup
  // distance is pi at the midpoint, so the distance is about 0.5 * pi (the
  // sup is evaluated on a finite grid, hence the slack).
  CHECK(d == doctest::Approx(0.5 * kPi).epsilon(0.02));
}
