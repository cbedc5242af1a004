#pragma once

// Audit engine: support/section/continuity audits for planners, algebraic
// law suites, the planner registry, and the config-driven runner behind the
// CLI. Reports are deterministic for a fixed config and seed.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "analogmp/cover.hpp"
#include "analogmp/errors.hpp"
#include "analogmp/geometry.hpp"
#include "analogmp/group_simplex.hpp"
#include "analogmp/measure.hpp"
#include "analogmp/planner.hpp"
#include "analogmp/rational.hpp"
#include "analogmp/transport.hpp"

namespace analogmp {

using Json = nlohmann::ordered_json;

struct AuditReport {
  std::string suite;
  bool pass = true;
  double max_error = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  std::map<int, long long> support_histogram;
  struct Rung {
    double h = 0.0;
    double max_ratio = 0.0;
  };
  std::vector<Rung> ladder;
  std::vector<std::string> failure_exemplars;
  Json extra = Json::object();

  Json to_json() const {
    Json j;
    j["suite"] = suite;
    j["pass"] = pass;
    j["max_error"] = max_error;
    j["samples"] = samples;
    j["seed"] = seed;
    Json hist = Json::object();
    for (const auto& [k, v] : support_histogram) hist[std::to_string(k)] = v;
    j["support_histogram"] = hist;
    Json lad = Json::array();
    for (const auto& r : ladder)
      lad.push_back(Json{{"h", r.h}, {"max_ratio", r.max_ratio}});
    j["ladder"] = lad;
    j["failure_exemplars"] = failure_exemplars;
    if (!extra.empty()) j["extra"] = extra;
    return j;
  }
};

inline constexpr int kMaxExemplars = 5;

namespace detail {

inline std::string encode_input(const std::vector<Vec>& in) {
  Json j = Json::array();
  for (const auto& p : in) j.push_back(p);
  return j.dump();
}

inline Vec perturb_point(const Space& sp, const Vec& p, double h,
                         std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  switch (sp.kind()) {
    case Space::Kind::Sphere:
    case Space::Kind::Projective: {
      Vec q = p;
      double scale = h / std::sqrt(double(q.size()));
      for (double& c : q) c += scale * g(rng);
      return sp.canonical(std::move(q));
    }
    case Space::Kind::Circle:
      return {wrap_angle(p[0] + h * g(rng))};
    case Space::Kind::Discrete:
      return p;
    default: {
      Vec out;
      std::size_t at = 0;
      for (const auto& c : sp.components()) {
        Vec pc(p.begin() + at, p.begin() + at + c.point_dim());
        at += c.point_dim();
        Vec qc = perturb_point(c, pc, h, rng);
        out.insert(out.end(), qc.begin(), qc.end());
      }
      return out;
    }
  }
}

inline std::vector<Vec> sample_input(const AnalogPlanner& pl,
                                     std::mt19937_64& rng, bool stress) {
  if (stress && pl.stress_input) return pl.stress_input(rng);
  std::vector<Vec> in;
  for (int i = 0; i < pl.arity; ++i) in.push_back(pl.space.random_point(rng));
  return in;
}

inline double tuple_distance(const Space& sp, const std::vector<Vec>& a,
                             const std::vector<Vec>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = sp.distance(a[i], b[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace detail

// Observed support size against the declared bound.
inline AuditReport support_audit(const AnalogPlanner& pl, long long samples,
                                 std::uint64_t seed = 42) {
  AuditReport rep;
  rep.suite = pl.name + ".support";
  rep.samples = samples;
  rep.seed = seed;
  rep.extra["declared_bound"] = pl.support_bound;
  int max_seen = 0;
  for (long long i = 0; i < samples; ++i) {
    std::mt19937_64 rng(seed + std::uint64_t(i));
    auto in = detail::sample_input(pl, rng, i % 4 == 3);
    auto mu = pl.plan(in);
    int sz = static_cast<int>(mu.support_size());
    ++rep.support_histogram[sz];
    max_seen = std::max(max_seen, sz);
    if (sz > pl.support_bound) {
      rep.pass = false;
      if (static_cast<int>(rep.failure_exemplars.size()) < kMaxExemplars)
        rep.failure_exemplars.push_back(detail::encode_input(in));
    }
  }
  rep.extra["max_support"] = max_seen;
  rep.max_error = std::max(0.0, double(max_seen - pl.support_bound));
  return rep;
}

// Every atom path must realize the prescribed evaluation constraints.
inline AuditReport section_audit(const AnalogPlanner& pl, long long samples,
                                 std::uint64_t seed = 42) {
  AuditReport rep;
  rep.suite = pl.name + ".section";
  rep.samples = samples;
  rep.seed = seed;
  auto times = pl.eval_times();
  for (long long i = 0; i < samples; ++i) {
    std::mt19937_64 rng(seed + std::uint64_t(i));
    auto in = detail::sample_input(pl, rng, i % 4 == 3);
    auto mu = pl.plan(in);
    double worst = 0.0;
    for (const auto& [g, w] : mu.atoms) {
      if (pl.arity == 1) {
        worst = std::max(
            worst, pl.space.distance(pl.space.eval_path(g, 0.0), pl.basepoint));
        worst = std::max(worst, pl.space.distance(pl.space.eval_path(g, 1.0),
                                                  pl.space.canonical(in[0])));
      } else {
        for (int k = 0; k < pl.arity; ++k)
          worst = std::max(worst,
                           pl.space.distance(pl.space.eval_path(g, times[k]),
                                             pl.space.canonical(in[k])));
      }
    }
    rep.max_error = std::max(rep.max_error, worst);
    if (worst > kSectionTol) {
      rep.pass = false;
      if (static_cast<int>(rep.failure_exemplars.size()) < kMaxExemplars)
        rep.failure_exemplars.push_back(detail::encode_input(in));
    }
  }
  return rep;
}

// Empirical continuity: per rung of the scale ladder, the worst ratio of
// output-measure distance to input distance over nearby input pairs. Passes
// when the ratio does not blow up (growth factor at most 4 between rungs).
inline AuditReport continuity_probe(const AnalogPlanner& pl,
                                    const std::vector<double>& ladder,
                                    long long pairs_per_rung,
                                    std::uint64_t seed = 42) {
  AuditReport rep;
  rep.suite = pl.name + ".continuity";
  rep.samples = pairs_per_rung * static_cast<long long>(ladder.size());
  rep.seed = seed;
  for (std::size_t r = 0; r < ladder.size(); ++r) {
    double h = ladder[r];
    if (r > 0 && ladder[r] >= ladder[r - 1])
      throw ConfigError("continuity ladder must be strictly decreasing");
    double worst = 0.0;
    for (long long i = 0; i < pairs_per_rung; ++i) {
      std::mt19937_64 rng(seed + std::uint64_t(r) * 100003 + std::uint64_t(i));
      auto base = detail::sample_input(pl, rng, i % 2 == 1);
      std::vector<Vec> moved;
      for (const auto& p : base)
        moved.push_back(detail::perturb_point(pl.space, p, h, rng));
      double din = detail::tuple_distance(pl.space, base, moved);
      if (din < 1e-12) continue;
      double dout = path_measure_distance(pl.space, pl.plan(base), pl.plan(moved));
      worst = std::max(worst, dout / din);
    }
    rep.ladder.push_back({h, worst});
  }
  for (std::size_t r = 0; r + 1 < rep.ladder.size(); ++r) {
    if (rep.ladder[r + 1].max_ratio > 4.0 * rep.ladder[r].max_ratio + 1e-9) {
      rep.pass = false;
      std::ostringstream os;
      os << "ratio grew from " << rep.ladder[r].max_ratio << " at h="
         << rep.ladder[r].h << " to " << rep.ladder[r + 1].max_ratio
         << " at h=" << rep.ladder[r + 1].h;
      if (static_cast<int>(rep.failure_exemplars.size()) < kMaxExemplars)
        rep.failure_exemplars.push_back(os.str());
    }
    rep.max_error = std::max(rep.max_error, rep.ladder[r + 1].max_ratio);
  }
  return rep;
}

inline std::vector<double> default_ladder() { return {1e-1, 1e-2, 1e-3, 1e-4}; }

// ---------------------------------------------------------------------------
// Law suites

// Exhaustive exact-rational monad laws on discrete atom sets.
inline AuditReport monad_law_suite(int max_atoms = 4, int max_denominator = 6) {
  AuditReport rep;
  rep.suite = "law.monad";
  auto ops = int_ops();
  auto mops = measure_atom_ops<int, Rat>(ops, Rat(0));
  auto mmops = measure_atom_ops<Measure<int, Rat>, Rat>(mops, Rat(0));
  using M = Measure<int, Rat>;

  std::vector<M> grid;
  for (int den = 1; den <= max_denominator; ++den) {
    std::vector<int> parts;
    detail::enumerate_compositions(den, max_atoms, parts,
                                   [&](const std::vector<int>& p) {
                                     std::vector<std::pair<int, Rat>> raw;
                                     for (int i = 0; i < max_atoms; ++i)
                                       if (p[i] > 0)
                                         raw.emplace_back(i, Rat(p[i], den));
                                     grid.push_back(detail::lowest_terms(
                                         std::move(raw), ops));
                                   });
  }
  long long violations = 0;
  // Unit laws, exhaustive over the grid.
  for (const auto& mu : grid) {
    ++rep.samples;
    // flatten(dirac(mu)) == mu
    if (!measures_equal(flatten(dirac<M, Rat>(mu), ops), mu, ops, Rat(0)))
      ++violations;
    // flatten(map(dirac)(mu)) == mu
    auto mapped = pushforward<int, M, Rat>(
        [](int x) { return dirac<int, Rat>(x); }, mu, mops);
    if (!measures_equal(flatten(mapped, ops), mu, ops, Rat(0))) ++violations;
  }
  // Associativity over triple-nested measures built from a systematic pool.
  std::vector<M> pool(grid.begin(),
                      grid.begin() + std::min<std::size_t>(grid.size(), 10));
  std::vector<Measure<M, Rat>> mid;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i; j < pool.size(); ++j) {
      std::vector<std::pair<M, Rat>> raw{{pool[i], Rat(1, 3)},
                                         {pool[j], Rat(2, 3)}};
      mid.push_back(detail::lowest_terms(std::move(raw), mops));
    }
  for (std::size_t i = 0; i < mid.size(); ++i)
    for (std::size_t j = i; j < mid.size(); ++j) {
      ++rep.samples;
      std::vector<std::pair<Measure<M, Rat>, Rat>> raw{{mid[i], Rat(1, 2)},
                                                       {mid[j], Rat(1, 2)}};
      auto big = detail::lowest_terms(std::move(raw), mmops);
      // flatten . map(flatten) == flatten . flatten
      auto inner_flattened = pushforward<Measure<M, Rat>, M, Rat>(
          [&](const Measure<M, Rat>& mm) { return flatten(mm, ops); }, big,
          mops);
      auto left = flatten(inner_flattened, ops);
      auto right = flatten(flatten(big, mops), ops);
      if (!measures_equal(left, right, ops, Rat(0))) ++violations;
    }
  rep.extra["violations"] = violations;
  rep.extra["grid_size"] = static_cast<long long>(grid.size());
  rep.pass = violations == 0;
  return rep;
}

// Cover transfer algebra: p_* p^* = id and the degree support bound, on the
// antipodal cover and a degree-3 circle cover.
inline AuditReport transfer_law_suite(long long samples = 10000,
                                      std::uint64_t seed = 42) {
  AuditReport rep;
  rep.suite = "law.transfer";
  rep.samples = samples;
  rep.seed = seed;
  std::vector<CoveringMap> covers{antipodal_cover(2), circle_power_cover(3)};
  for (std::size_t c = 0; c < covers.size(); ++c) {
    const auto& cov = covers[c];
    auto ops = cov.base.point_ops();
    for (long long i = 0; i < samples / 2; ++i) {
      std::mt19937_64 rng(seed + std::uint64_t(c) * 1000003 + std::uint64_t(i));
      std::uniform_int_distribution<int> szd(1, 4);
      int sz = szd(rng);
      std::vector<std::pair<Vec, double>> raw;
      std::uniform_real_distribution<double> wd(0.1, 1.0);
      double tot = 0.0;
      std::vector<double> ws;
      for (int k = 0; k < sz; ++k) {
        ws.push_back(wd(rng));
        tot += ws.back();
      }
      for (int k = 0; k < sz; ++k)
        raw.emplace_back(cov.base.random_point(rng), ws[k] / tot);
      auto mu = normalize(std::move(raw), ops);
      auto lifted = cover_pullback(cov, mu);
      if (static_cast<int>(lifted.support_size()) >
          cov.degree * static_cast<int>(mu.support_size())) {
        rep.pass = false;
        rep.max_error = std::max(rep.max_error, 2.0);
        continue;
      }
      auto back = pushforward<Vec, Vec, double>(
          [&cov](const Vec& e) { return cov.project(e); }, lifted, ops);
      rep.max_error = std::max(rep.max_error, measure_max_error(back, mu, ops));
    }
  }
  if (rep.max_error > 1e-12) rep.pass = false;
  return rep;
}

// External product algebra: marginals retract boxtimes; flatten obeys the
// product support bound.
inline AuditReport boxtimes_law_suite(long long samples = 10000,
                                      std::uint64_t seed = 42) {
  AuditReport rep;
  rep.suite = "law.boxtimes";
  rep.samples = samples;
  rep.seed = seed;
  auto ops = int_ops();
  for (long long i = 0; i < samples; ++i) {
    std::mt19937_64 rng(seed + std::uint64_t(i));
    std::uniform_int_distribution<int> szd(1, 4);
    std::uniform_real_distribution<double> wd(0.1, 1.0);
    auto random_measure = [&](int atoms_hi) {
      int sz = szd(rng);
      std::vector<std::pair<int, double>> raw;
      double tot = 0.0;
      std::vector<double> ws;
      for (int k = 0; k < sz; ++k) {
        ws.push_back(wd(rng));
        tot += ws.back();
      }
      std::uniform_int_distribution<int> ad(0, atoms_hi);
      for (int k = 0; k < sz; ++k) raw.emplace_back(ad(rng), ws[k] / tot);
      return normalize(std::move(raw), int_ops());
    };
    auto mu = random_measure(5), nu = random_measure(5);
    auto prod = boxtimes(mu, nu, ops, ops);
    if (prod.support_size() > mu.support_size() * nu.support_size()) {
      rep.pass = false;
      continue;
    }
    auto [left, right] = marginals(prod, ops, ops);
    rep.max_error = std::max(rep.max_error, measure_max_error(left, mu, ops));
    rep.max_error = std::max(rep.max_error, measure_max_error(right, nu, ops));
  }
  if (rep.max_error > 1e-12) rep.pass = false;
  return rep;
}

// Transport solver against the spanning-tree oracle, plus metric axioms.
inline AuditReport transport_oracle_suite(long long instances = 200,
                                          long long triples = 1000,
                                          std::uint64_t seed = 42) {
  AuditReport rep;
  rep.suite = "law.transport_oracle";
  rep.samples = instances + triples;
  rep.seed = seed;
  std::function<double(const double&, const double&)> g =
      [](const double& a, const double& b) { return std::abs(a - b); };
  AtomOps<double> ops;
  ops.eq = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
  ops.less = [](double a, double b) { return a < b; };
  auto random_measure = [&](std::mt19937_64& rng, int max_sz) {
    std::uniform_int_distribution<int> szd(1, max_sz);
    std::uniform_real_distribution<double> xd(0.0, 1.0), wd(0.1, 1.0);
    int sz = szd(rng);
    std::vector<std::pair<double, double>> raw;
    double tot = 0.0;
    std::vector<double> ws;
    for (int k = 0; k < sz; ++k) {
      ws.push_back(wd(rng));
      tot += ws.back();
    }
    for (int k = 0; k < sz; ++k)
      raw.emplace_back(std::round(xd(rng) * 64.0) / 64.0, ws[k] / tot);
    return normalize(std::move(raw), ops);
  };
  double worst_oracle = 0.0;
  for (long long i = 0; i < instances; ++i) {
    std::mt19937_64 rng(seed + std::uint64_t(i));
    auto mu = random_measure(rng, 3), nu = random_measure(rng, 3);
    double w = wasserstein1(mu, nu, g);
    double o = w1_oracle(mu, nu, g);
    worst_oracle = std::max(worst_oracle, std::abs(w - o));
  }
  double worst_metric = 0.0;
  for (long long i = 0; i < triples; ++i) {
    std::mt19937_64 rng(seed + 7777 + std::uint64_t(i));
    auto a = random_measure(rng, 4), b = random_measure(rng, 4),
         c = random_measure(rng, 4);
    double ab = wasserstein1(a, b, g), ba = wasserstein1(b, a, g);
    double ac = wasserstein1(a, c, g), cb = wasserstein1(c, b, g);
    worst_metric = std::max(worst_metric, std::abs(ab - ba));
    worst_metric = std::max(worst_metric, ab - (ac + cb));
    worst_metric = std::max(worst_metric, wasserstein1(a, a, g));
  }
  rep.extra["oracle_max_delta"] = worst_oracle;
  rep.extra["metric_max_violation"] = worst_metric;
  rep.max_error = std::max(worst_oracle, worst_metric);
  rep.pass = rep.max_error <= 1e-9;
  return rep;
}

// Group action laws, torsion witnesses, and the shift-model freeness check.
inline AuditReport group_action_suite(int shift_q = 5, int shift_w = 11) {
  AuditReport rep;
  rep.suite = "law.group_action";
  std::vector<FiniteGroup> catalog;
  for (int n = 2; n <= 8; ++n) catalog.push_back(FiniteGroup::cyclic(n));
  catalog.push_back(FiniteGroup::dihedral(3));
  catalog.push_back(FiniteGroup::dihedral(4));
  catalog.push_back(FiniteGroup::quaternion8());
  long long violations = 0;
  for (const auto& G : catalog) {
    // Action and torsion-witness laws on a small exact grid.
    std::vector<SimplexPoint> pts;
    std::vector<int> parts;
    detail::enumerate_compositions(3, std::min(G.size(), 4), parts,
                                   [&](const std::vector<int>& p) {
                                     std::vector<std::pair<int, Rat>> raw;
                                     for (std::size_t i = 0; i < p.size(); ++i)
                                       if (p[i] > 0)
                                         raw.emplace_back(int(i), Rat(p[i], 3));
                                     pts.push_back(detail::lowest_terms(
                                         std::move(raw), int_ops()));
                                   });
    for (const auto& xi : pts)
      for (int g = 0; g < G.size(); ++g) {
        ++rep.samples;
        for (int h = 0; h < G.size(); ++h)
          if (!measures_equal(act(G, g, act(G, h, xi)), act(G, G.mul(g, h), xi),
                              int_ops(), Rat(0)))
            ++violations;
        if (skeleton_index(act(G, g, xi)) != skeleton_index(xi)) ++violations;
      }
    for (int g = 0; g < G.size(); ++g) {
      if (g == G.identity()) continue;
      ++rep.samples;
      auto w = torsion_fixed_point_witness(G, g);
      if (!measures_equal(act(G, g, w), w, int_ops(), Rat(0))) ++violations;
    }
    auto probe = free_action_probe_group(G, 4);
    if (G.size() > 1 && probe.fixed_points_found == 0) ++violations;
  }
  auto shift = free_action_probe_shift(shift_q, shift_w);
  rep.extra["shift_grid_points"] = shift.grid_points_checked;
  rep.extra["shift_fixed_points"] = shift.fixed_points_found;
  if (shift.fixed_points_found != 0) ++violations;
  rep.extra["violations"] = violations;
  rep.pass = violations == 0;
  return rep;
}

// ---------------------------------------------------------------------------
// Planner registry

inline std::vector<std::string> planner_names() {
  return {"rp_tc",           "sphere_acat", "sphere_tc",
          "circle_tc",       "circle_tc3",  "torus_tc",
          "rp_acat_transfer", "rp_tc2_equivariant", "rp_tc2_generic",
          "rp_naive"};
}

inline AnalogPlanner make_planner(const std::string& name, int d = 2) {
  if (name == "rp_tc") return rp_tc_planner(d);
  if (name == "sphere_acat") return acat_sphere_planner(d);
  if (name == "sphere_tc") return sphere_tc_planner(d);
  if (name == "circle_tc") return circle_tc_planner();
  if (name == "circle_tc3") return chain_planner(circle_tc_planner(), 3);
  if (name == "torus_tc") {
    AnalogPlanner t = circle_tc_planner();
    for (int i = 1; i < std::max(2, d); ++i)
      t = product_planner(t, circle_tc_planner());
    t.name = "torus_tc";
    return t;
  }
  if (name == "rp_acat_transfer")
    return acat_cover_transfer(antipodal_cover(d), acat_sphere_planner(d));
  if (name == "rp_tc2_equivariant")
    return equivariant_tc_transfer(antipodal_cover(d), sphere_tc_planner(d));
  if (name == "rp_tc2_generic")
    return generic_tc_transfer(antipodal_cover(d), sphere_tc_planner(d));
  if (name == "rp_naive") return naive_rp_planner(d);
  throw UnknownPlanner("unknown planner: " + name);
}

// Default bundle: support + section + continuity.
inline std::vector<AuditReport> default_audit_bundle(
    const AnalogPlanner& pl, long long samples = 1000,
    long long pairs_per_rung = 200, std::uint64_t seed = 42) {
  return {support_audit(pl, samples, seed), section_audit(pl, samples, seed),
          continuity_probe(pl, default_ladder(), pairs_per_rung, seed)};
}

// ---------------------------------------------------------------------------
// Config-driven runner

struct SuiteSpec {
  std::string kind;     // "audit" or "law"
  std::string target;   // planner name or law kind
  int d = 2;
  std::string which = "all";  // support | section | continuity | all
};

struct AuditConfig {
  std::uint64_t seed = 42;
  long long samples = 1000;
  long long pairs_per_rung = 200;
  std::vector<double> ladder = {1e-1, 1e-2, 1e-3, 1e-4};
  std::string out_dir = ".";
  std::vector<SuiteSpec> suites;
};

// Flat key-value config: `key = value` lines, '#' comments, repeated `suite`
// keys. Suite grammar: law:<kind> | audit:<planner>[:d=N][:which=W].
inline AuditConfig parse_config(std::istream& in) {
  AuditConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "seed") {
        cfg.seed = std::stoull(val);
      } else if (key == "samples") {
        cfg.samples = std::stoll(val);
        if (cfg.samples <= 0) throw ConfigError("samples must be positive");
      } else if (key == "pairs_per_rung") {
        cfg.pairs_per_rung = std::stoll(val);
        if (cfg.pairs_per_rung <= 0)
          throw ConfigError("pairs_per_rung must be positive");
      } else if (key == "out") {
        cfg.out_dir = val;
      } else if (key == "ladder") {
        cfg.ladder.clear();
        std::istringstream ls(val);
        std::string tok;
        while (std::getline(ls, tok, ',')) cfg.ladder.push_back(std::stod(tok));
        for (std::size_t i = 0; i + 1 < cfg.ladder.size(); ++i)
          if (cfg.ladder[i + 1] >= cfg.ladder[i])
            throw ConfigError("ladder must be strictly decreasing");
      } else if (key == "suite") {
        SuiteSpec s;
        std::istringstream ss(val);
        std::string tok;
        std::vector<std::string> parts;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        if (parts.size() < 2) throw ConfigError("bad suite spec: " + val);
        s.kind = parts[0];
        s.target = parts[1];
        for (std::size_t i = 2; i < parts.size(); ++i) {
          if (parts[i].rfind("d=", 0) == 0)
            s.d = std::stoi(parts[i].substr(2));
          else if (parts[i].rfind("which=", 0) == 0)
            s.which = parts[i].substr(6);
          else
            throw ConfigError("bad suite option: " + parts[i]);
        }
        if (s.kind != "audit" && s.kind != "law")
          throw ConfigError("suite kind must be audit or law");
        cfg.suites.push_back(std::move(s));
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (cfg.suites.empty()) throw ConfigError("config lists no suites");
  return cfg;
}

inline std::vector<AuditReport> run_suites(const AuditConfig& cfg) {
  std::vector<AuditReport> reports;
  for (const auto& s : cfg.suites) {
    if (s.kind == "law") {
      if (s.target == "monad")
        reports.push_back(monad_law_suite());
      else if (s.target == "transfer")
        reports.push_back(transfer_law_suite(cfg.samples, cfg.seed));
      else if (s.target == "boxtimes")
        reports.push_back(boxtimes_law_suite(cfg.samples, cfg.seed));
      else if (s.target == "transport_oracle")
        reports.push_back(transport_oracle_suite(200, 1000, cfg.seed));
      else if (s.target == "group_action")
        reports.push_back(group_action_suite());
      else
        throw ConfigError("unknown law suite: " + s.target);
      continue;
    }
    AnalogPlanner pl = make_planner(s.target, s.d);
    auto tag = [&](AuditReport r) {
      r.suite = s.target + ":d=" + std::to_string(s.d) + "." +
                r.suite.substr(r.suite.find('.') + 1);
      return r;
    };
    if (s.which == "support" || s.which == "all")
      reports.push_back(tag(support_audit(pl, cfg.samples, cfg.seed)));
    if (s.which == "section" || s.which == "all")
      reports.push_back(tag(section_audit(pl, cfg.samples, cfg.seed)));
    if (s.which == "continuity" || s.which == "all")
      reports.push_back(
          tag(continuity_probe(pl, cfg.ladder, cfg.pairs_per_rung, cfg.seed)));
  }
  return reports;
}

inline Json reports_to_json(const AuditConfig& cfg,
                            const std::vector<AuditReport>& reports) {
  Json j;
  j["version"] = 1;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  Json arr = Json::array();
  bool all = true;
  for (const auto& r : reports) {
    arr.push_back(r.to_json());
    all = all && r.pass;
  }
  j["all_pass"] = all;
  j["suites"] = arr;
  return j;
}

}  // namespace analogmp
