#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "analogmp/measure.hpp"
#include "analogmp/rational.hpp"

using namespace analogmp;

namespace {

AtomOps<std::string> str_ops() {
  AtomOps<std::string> ops;
  ops.eq = [](const std::string& a, const std::string& b) { return a == b; };
  ops.less = [](const std::string& a, const std::string& b) { return a < b; };
  return ops;
}

Measure<std::string> m(std::vector<std::pair<std::string, double>> raw) {
  return normalize(std::move(raw), str_ops());
}

}  // namespace

TEST_CASE("normalize merges duplicate atoms and drops zero weights") {
  auto mu = m({{"a", 0.25}, {"b", 0.5}, {"a", 0.25}, {"c", 0.0}});
  CHECK(mu.support_size() == 2);
  CHECK(mu.mass("a", str_ops()) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mu.mass("b", str_ops()) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mu.mass("c", str_ops()) == 0.0);
  // Canonical order is by the atom ordering, deterministically.
  CHECK(mu.atoms.front().first == "a");
}

TEST_CASE("normalize rejects bad mass and rescales tiny drift") {
  CHECK_THROWS_AS(m({{"a", 0.3}, {"b", 0.3}}), NotNormalized);
  CHECK_THROWS_AS(m({{"a", 1.5}, {"b", -0.5}}), NegativeWeight);
  CHECK_THROWS_AS(m({}), NotNormalized);
  // Within mass_tol the result is rescaled to total exactly 1.
  auto mu = m({{"a", 0.5 + 2e-10}, {"b", 0.5}});
  CHECK(std::abs(mu.total() - 1.0) <= 1e-15);
}

TEST_CASE("near-duplicate atoms under a tolerant eq still merge") {
  AtomOps<double> ops;
  ops.eq = [](double a, double b) { return std::abs(a - b) < 1e-6; };
  ops.less = [](double a, double b) { return a < b; };
  auto mu = normalize<double, double>({{1.0, 0.5}, {1.0 + 1e-9, 0.5}}, ops);
  CHECK(mu.support_size() == 1);
  CHECK(mu.atoms[0].second == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dirac is a unit mass") {
  auto d = dirac<std::string>("x");
  CHECK(d.support_size() == 1);
  CHECK(d.total() == 1.0);
  CHECK(d.mass("x", str_ops()) == 1.0);
}

TEST_CASE("pushforward merges collided atoms and preserves diracs") {
  auto mu = m({{"a", 0.25}, {"b", 0.5}, {"c", 0.25}});
  auto collapse = [](const std::string& s) {
    return s == "c" ? std::string("a") : s;
  };
  auto nu = pushforward<std::string, std::string, double>(collapse, mu, str_ops());
  CHECK(nu.support_size() == 2);
  CHECK(nu.mass("a", str_ops()) == doctest::Approx(0.5).epsilon(1e-12));

  auto d = pushforward<std::string, std::string, double>(
      collapse, dirac<std::string>("c"), str_ops());
  CHECK(measures_equal(d, dirac<std::string>("a"), str_ops(), 1e-12));
}

TEST_CASE("flatten satisfies the unit laws") {
  auto mu = m({{"a", 0.25}, {"b", 0.75}});
  auto atom_ops = measure_atom_ops<std::string, double>(str_ops(), 1e-12);

  // kappa . eta = id
  auto big = dirac<Measure<std::string>>(mu);
  CHECK(measures_equal(flatten(big, str_ops()), mu, str_ops(), 1e-12));

  // kappa . T(eta) = id
  auto lifted = pushforward<std::string, Measure<std::string>, double>(
      [](const std::string& s) { return dirac<std::string>(s); }, mu, atom_ops);
  CHECK(measures_equal(flatten(lifted, str_ops()), mu, str_ops(), 1e-12));
}

TEST_CASE("flatten of a two-level mixture") {
  auto inner1 = m({{"a", 0.5}, {"b", 0.5}});
  auto inner2 = m({{"b", 0.5}, {"c", 0.5}});
  auto atom_ops = measure_atom_ops<std::string, double>(str_ops(), 1e-12);
  auto big = normalize<Measure<std::string>, double>(
      {{inner1, 0.5}, {inner2, 0.5}}, atom_ops);
  auto flat = flatten(big, str_ops());
  CHECK(flat.support_size() == 3);
  CHECK(flat.mass("a", str_ops()) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(flat.mass("b", str_ops()) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(flat.mass("c", str_ops()) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("boxtimes is a product measure with the right marginals") {
  auto mu = m({{"a", 0.3}, {"b", 0.7}});
  auto nu = m({{"x", 0.4}, {"y", 0.6}});
  auto prod = boxtimes(mu, nu, str_ops(), str_ops());
  CHECK(prod.support_size() == 4);
  auto po = pair_ops(str_ops(), str_ops());
  CHECK(prod.mass({"a", "x"}, po) == doctest::Approx(0.12).epsilon(1e-12));
  CHECK(prod.mass({"b", "y"}, po) == doctest::Approx(0.42).epsilon(1e-12));

  auto [left, right] = marginals(prod, str_ops(), str_ops());
  CHECK(measures_equal(left, mu, str_ops(), 1e-12));
  CHECK(measures_equal(right, nu, str_ops(), 1e-12));
}

TEST_CASE("add merges overlapping supports") {
  auto mu = m({{"a", 0.5}, {"b", 0.5}});
  auto half = mu;
  for (auto& [a, w] : half.atoms) w *= 0.5;
  auto s = add(half, half, str_ops());
  CHECK(measures_equal(s, mu, str_ops(), 1e-12));
}

TEST_CASE("check_relative detects fiberwise constancy") {
  auto mu = m({{"ax", 0.5}, {"ay", 0.5}});
  RelativeConstraint<std::string, char> over_first;
  over_first.map = [](const std::string& s) { return s[0]; };
  over_first.target_eq = [](char a, char b) { return a == b; };
  CHECK(check_relative(mu, over_first));

  auto bad = m({{"ax", 0.5}, {"by", 0.5}});
  CHECK(!check_relative(bad, over_first));
}

TEST_CASE("check_relative respects the target tolerance") {
  // Atoms project to base points 1e-5 apart: relative at tol 1e-3 but not
  // at tol 1e-7.
  auto mu = normalize<double, double>(
      {{0.0, 0.5}, {1e-5, 0.5}},
      AtomOps<double>{[](double a, double b) { return a == b; },
                      [](double a, double b) { return a < b; }});
  auto constraint = [](double tol) {
    RelativeConstraint<double, double> c;
    c.map = [](double x) { return x; };
    c.target_eq = [tol](double a, double b) { return std::abs(a - b) <= tol; };
    return c;
  };
  CHECK(check_relative(mu, constraint(1e-3)));
  CHECK(!check_relative(mu, constraint(1e-7)));
}

TEST_CASE("measure_max_error flags support mismatch with a sentinel") {
  auto mu = m({{"a", 0.5}, {"b", 0.5}});
  auto nu = m({{"a", 1.0}});
  CHECK(measure_max_error(mu, nu, str_ops()) == 2.0);
  CHECK(measure_max_error(mu, mu, str_ops()) == 0.0);
}

TEST_CASE("rational weights are exact") {
  using RM = Measure<int, Rat>;
  RM mu = normalize<int, Rat>({{0, Rat(1, 3)}, {1, Rat(1, 3)}, {2, Rat(1, 3)}},
                              int_ops());
  CHECK(mu.total() == Rat(1));
  RM big_inner = normalize<int, Rat>({{0, Rat(1, 2)}, {1, Rat(1, 2)}}, int_ops());
  auto mo = measure_atom_ops<int, Rat>(int_ops(), Rat(0));
  auto big = normalize<RM, Rat>({{mu, Rat(1, 2)}, {big_inner, Rat(1, 2)}}, mo);
  auto flat = flatten(big, int_ops());
  CHECK(flat.mass(0, int_ops()) == Rat(1, 6) + Rat(1, 4));
  CHECK(flat.mass(2, int_ops()) == Rat(1, 6));
  CHECK(flat.total() == Rat(1));
}

TEST_CASE("randomized monad functoriality") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<int, double>> raw;
    int n = 2 + int(rng() % 4);
    double tot = 0.0;
    for (int i = 0; i < n; ++i) {
      double w = u(rng);
      raw.emplace_back(int(rng() % 6), w);
      tot += w;
    }
    for (auto& [a, w] : raw) w /= tot;
    auto mu = normalize(std::move(raw), int_ops());
    // pushforward along g.f equals the composite of pushforwards
    auto f = [](int x) { return x % 3; };
    auto g = [](int x) { return x * x; };
    auto lhs = pushforward<int, int, double>(
        [&](int x) { return g(f(x)); }, mu, int_ops());
    auto rhs = pushforward<int, int, double>(
        g, pushforward<int, int, double>(f, mu, int_ops()), int_ops());
    CHECK(measure_max_error(lhs, rhs, int_ops()) <= 1e-12);
  }
}
