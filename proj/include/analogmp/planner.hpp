#pragma once

// Analog motion planners: measure-valued sections of path fibrations.
// Each planner maps an r-tuple of points to a probability measure over
// piecewise-geodesic paths whose atoms all realize the prescribed
// evaluation constraints, with support bounded by a declared constant.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "analogmp/cover.hpp"
#include "analogmp/errors.hpp"
#include "analogmp/geometry.hpp"
#include "analogmp/measure.hpp"
#include "analogmp/transport.hpp"

namespace analogmp {

inline constexpr double kSectionTol = 1e-7;

struct AnalogPlanner {
  std::string name;
  Space space;
  int arity = 2;          // r; r == 1 is the based planner with `basepoint`
  int support_bound = 2;  // declared n+1
  Vec basepoint;          // used when arity == 1
  std::function<Measure<GeoPath>(const std::vector<Vec>&)> plan;
  // Optional generator of near-critical inputs for continuity probing.
  std::function<std::vector<Vec>(std::mt19937_64&)> stress_input;

  Measure<GeoPath> operator()(const std::vector<Vec>& input) const {
    if (static_cast<int>(input.size()) != arity)
      throw ArityMismatch("planner input arity mismatch");
    return plan(input);
  }

  // Times at which atom paths are pinned to the input tuple.
  std::vector<double> eval_times() const {
    std::vector<double> t;
    if (arity == 1) {
      t.push_back(1.0);
    } else {
      for (int i = 0; i < arity; ++i)
        t.push_back(double(i) / double(arity - 1));
    }
    return t;
  }
};

// Partition-of-unity combinator: the measure sum_i phi_i(y) delta_{s_i(y)}.
template <class In>
struct PouRule {
  std::function<bool(const In&)> membership;
  std::function<GeoPath(const In&)> section;
  std::function<double(const In&)> bump;
};

template <class In>
Measure<GeoPath> pou_section(const std::vector<PouRule<In>>& rules,
                             const In& y, const AtomOps<GeoPath>& ops) {
  double total = 0.0;
  for (const auto& r : rules) total += r.bump(y);
  if (std::abs(total - 1.0) > 1e-9)
    throw PartitionNotUnity("bumps do not sum to 1 at the query point");
  std::vector<std::pair<GeoPath, double>> raw;
  for (const auto& r : rules) {
    double phi = r.bump(y);
    if (phi <= 0.0) continue;
    if (!r.membership(y))
      throw RuleOutsideDomain("positive bump outside the rule domain");
    raw.emplace_back(r.section(y), phi);
  }
  return normalize(std::move(raw), ops);
}

namespace detail {

// Pairwise-swap tangent field on an odd-dimensional sphere (even ambient
// dimension): nonvanishing, linear, odd.
inline Vec swap_field(const Vec& x) {
  Vec w(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
    w[i] = -x[i + 1];
    w[i + 1] = x[i];
  }
  return w;
}

// Rotational field in the coordinates orthogonal to the first axis; linear,
// odd, vanishing exactly at the poles +-e1. Requires even sphere dimension
// (odd ambient dimension).
inline Vec equatorial_field(const Vec& x) {
  Vec w(x.size(), 0.0);
  for (std::size_t i = 1; i + 1 < x.size(); i += 2) {
    w[i] = -x[i + 1];
    w[i + 1] = x[i];
  }
  return w;
}

inline double clamp01(double s) { return std::min(1.0, std::max(-1.0, s)); }

// Half great circle from x to -x through the direction w.
inline GeoPath half_circle(const Vec& x, const Vec& w) {
  return arc_from_dir(x, w, kPi);
}

}  // namespace detail

// Two-geodesic planner on real projective space: weights (1 +- theta)/2 on
// the projections of the two lifted arcs, where theta is the absolute value
// of the dot product of unit lifts.
inline AnalogPlanner rp_tc_planner(int d) {
  AnalogPlanner p;
  p.name = "rp_tc";
  p.space = Space::projective(d);
  p.arity = 2;
  p.support_bound = 2;
  Space sp = p.space;
  p.plan = [sp](const std::vector<Vec>& in) {
    Vec u = sp.canonical(in[0]);
    Vec v = sp.canonical(in[1]);
    if (dot(u, v) < 0.0) v = negated(v);
    double theta = detail::clamp01(dot(u, v));
    GeoPath g1 = arc_between(u, v);
    g1.projective = true;
    GeoPath g2 = arc_between(u, negated(v));
    g2.projective = true;
    std::vector<std::pair<GeoPath, double>> raw;
    raw.emplace_back(std::move(g1), 0.5 * (1.0 + theta));
    raw.emplace_back(std::move(g2), 0.5 * (1.0 - theta));
    return normalize(std::move(raw), path_ops(sp));
  };
  p.stress_input = [sp](std::mt19937_64& rng) {
    // Straddle the equal-length locus theta = 0.
    Vec u = sp.random_point(rng);
    Vec o = sp.canonical(ortho_completion(u));
    return std::vector<Vec>{u, o};
  };
  return p;
}

// Circle planner: counterclockwise arc with weight 1 - delta/(2*pi), the
// complementary clockwise arc with weight delta/(2*pi).
inline AnalogPlanner circle_tc_planner() {
  AnalogPlanner p;
  p.name = "circle_tc";
  p.space = Space::circle();
  p.arity = 2;
  p.support_bound = 2;
  Space sp = p.space;
  p.plan = [sp](const std::vector<Vec>& in) {
    double x = wrap_angle(in[0][0]);
    double delta = wrap_angle(in[1][0] - in[0][0]);
    std::vector<std::pair<GeoPath, double>> raw;
    raw.emplace_back(circle_arc(x, delta), 1.0 - delta / kTwoPi);
    raw.emplace_back(circle_arc(x, delta - kTwoPi), delta / kTwoPi);
    return normalize(std::move(raw), path_ops(sp));
  };
  p.stress_input = [sp](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    double x = u(rng);
    // Alternate between the wrap locus and the antipodal tie.
    double off = (rng() & 1) ? 0.0 : kPi;
    return std::vector<Vec>{{x}, {wrap_angle(x + off)}};
  };
  return p;
}

// Based planner on the sphere: shortest arc weighted (1 + <x0,y>)/2, and a
// fixed half circle through w0 followed by the shortest arc from -x0,
// weighted (1 - <x0,y>)/2.
inline AnalogPlanner acat_sphere_planner(int d, Vec basepoint = {}) {
  AnalogPlanner p;
  p.name = "sphere_acat";
  p.space = Space::sphere(d);
  p.arity = 1;
  p.support_bound = 2;
  if (basepoint.empty()) {
    basepoint.assign(d + 1, 0.0);
    basepoint[0] = 1.0;
  }
  p.basepoint = p.space.canonical(basepoint);
  Space sp = p.space;
  Vec x0 = p.basepoint;
  Vec w0 = ortho_completion(x0);
  p.plan = [sp, x0, w0](const std::vector<Vec>& in) {
    Vec y = sp.canonical(in[0]);
    double s = detail::clamp01(dot(x0, y));
    std::vector<std::pair<GeoPath, double>> raw;
    double wa = 0.5 * (1.0 + s), wb = 0.5 * (1.0 - s);
    if (wa > 0.0) raw.emplace_back(arc_between(x0, y), wa);
    if (wb > 0.0) {
      GeoPath leg1 = detail::half_circle(x0, w0);
      GeoPath leg2 = arc_between(negated(x0), y);
      raw.emplace_back(concat(leg1, leg2), wb);
    }
    return normalize(std::move(raw), path_ops(sp));
  };
  p.stress_input = [sp, x0](std::mt19937_64& rng) {
    // The delicate locus is the antipode of the basepoint.
    (void)rng;
    return std::vector<Vec>{negated(x0)};
  };
  return p;
}

// Two-point sphere planner. Odd d: two rules through the nonvanishing
// pairwise-swap field. Even d: three partition-of-unity rules (shortest arc;
// equatorial-field detour; two-leg route through a pole-dependent waypoint).
inline AnalogPlanner sphere_tc_planner(int d) {
  AnalogPlanner p;
  p.name = "sphere_tc";
  p.space = Space::sphere(d);
  p.arity = 2;
  p.support_bound = (d % 2 == 1) ? 2 : 3;
  Space sp = p.space;

  if (d % 2 == 1) {
    p.plan = [sp](const std::vector<Vec>& in) {
      Vec x = sp.canonical(in[0]), y = sp.canonical(in[1]);
      double s = detail::clamp01(dot(x, y));
      std::vector<std::pair<GeoPath, double>> raw;
      double wa = 0.5 * (1.0 + s), wb = 0.5 * (1.0 - s);
      if (wa > 0.0) raw.emplace_back(arc_between(x, y), wa);
      if (wb > 0.0) {
        GeoPath leg1 = detail::half_circle(x, normalized(detail::swap_field(x)));
        GeoPath leg2 = arc_between(negated(x), y);
        raw.emplace_back(concat(leg1, leg2), wb);
      }
      return normalize(std::move(raw), path_ops(sp));
    };
  } else {
    Vec e1(d + 1, 0.0);
    e1[0] = 1.0;
    Vec w0(d + 1, 0.0);
    w0[1] = 1.0;  // waypoint axis, orthogonal to e1
    using In = std::pair<Vec, Vec>;
    std::vector<PouRule<In>> rules(3);
    auto s_of = [](const In& in) { return detail::clamp01(dot(in.first, in.second)); };
    auto c_of = [e1](const In& in) { return std::abs(dot(in.first, e1)); };
    // A: shortest arc, away from near-antipodal pairs.
    rules[0].membership = [s_of](const In& in) { return s_of(in) > -7.0 / 8.0 - 1e-12; };
    rules[0].bump = [s_of](const In& in) { return std::max(0.0, s_of(in) + 7.0 / 8.0); };
    rules[0].section = [](const In& in) { return arc_between(in.first, in.second); };
    // B: half circle along the equatorial field, then the shortest arc.
    rules[1].membership = [s_of, c_of](const In& in) {
      return s_of(in) < -3.0 / 4.0 + 1e-12 && c_of(in) < 7.0 / 8.0 + 1e-12;
    };
    rules[1].bump = [s_of, c_of](const In& in) {
      return std::max(0.0, -3.0 / 4.0 - s_of(in)) *
             std::max(0.0, 7.0 / 8.0 - c_of(in));
    };
    rules[1].section = [](const In& in) {
      GeoPath leg1 = detail::half_circle(
          in.first, normalized(detail::equatorial_field(in.first)));
      GeoPath leg2 = arc_between(negated(in.first), in.second);
      return concat(leg1, leg2);
    };
    // C: two-leg route through sign(<x,e1>) * w0 near the poles.
    rules[2].membership = [s_of, c_of](const In& in) {
      return s_of(in) < -3.0 / 4.0 + 1e-12 && c_of(in) > 3.0 / 4.0 - 1e-12;
    };
    rules[2].bump = [s_of, c_of](const In& in) {
      return std::max(0.0, -3.0 / 4.0 - s_of(in)) *
             std::max(0.0, c_of(in) - 3.0 / 4.0);
    };
    rules[2].section = [e1, w0](const In& in) {
      Vec m = dot(in.first, e1) >= 0.0 ? w0 : negated(w0);
      return concat(arc_between(in.first, m), arc_between(m, in.second));
    };
    p.plan = [sp, rules](const std::vector<Vec>& in) {
      In q{sp.canonical(in[0]), sp.canonical(in[1])};
      // Renormalize the clamped-linear bumps to a partition of unity.
      double total = 0.0;
      for (const auto& r : rules) total += r.bump(q);
      std::vector<PouRule<In>> scaled = rules;
      for (auto& r : scaled) {
        auto raw_bump = r.bump;
        r.bump = [raw_bump, total](const In& in2) {
          return raw_bump(in2) / total;
        };
      }
      return pou_section(scaled, q, path_ops(sp));
    };
  }
  p.stress_input = [sp](std::mt19937_64& rng) {
    Vec x = sp.random_point(rng);
    return std::vector<Vec>{x, negated(x)};
  };
  return p;
}

// Deliberately discontinuous control: the single shortest geodesic on
// projective space, weight 1.
inline AnalogPlanner naive_rp_planner(int d) {
  AnalogPlanner p;
  p.name = "rp_naive";
  p.space = Space::projective(d);
  p.arity = 2;
  p.support_bound = 1;
  Space sp = p.space;
  p.plan = [sp](const std::vector<Vec>& in) {
    auto gs = sp.geodesics(sp.canonical(in[0]), sp.canonical(in[1]));
    return dirac(gs.front().first);
  };
  p.stress_input = [sp](std::mt19937_64& rng) {
    Vec u = sp.random_point(rng);
    Vec o = sp.canonical(ortho_completion(u));
    return std::vector<Vec>{u, o};
  };
  return p;
}

// Transfer of a based planner along a finite cover: average the lifted plans
// over the fiber and flatten. Support bound multiplies by the degree.
inline AnalogPlanner acat_cover_transfer(const CoveringMap& p,
                                         const AnalogPlanner& s) {
  if (s.arity != 1)
    throw ArityMismatch("cover transfer of a based planner needs arity 1");
  if (!p.total.equal(s.basepoint, p.total.canonical(s.basepoint)))
    throw BasepointMismatch("planner basepoint is not canonical in the total space");
  AnalogPlanner t;
  t.name = s.name + "_transfer";
  t.space = p.base;
  t.arity = 1;
  t.support_bound = p.degree * s.support_bound;
  t.basepoint = p.project(s.basepoint);
  CoveringMap cov = p;
  AnalogPlanner inner = s;
  t.plan = [cov, inner](const std::vector<Vec>& in) {
    Vec x = cov.base.canonical(in[0]);
    std::vector<std::pair<GeoPath, double>> raw;
    auto f = fiber(cov, x);
    for (const auto& lift : f) {
      Measure<GeoPath> m = inner.plan({lift});
      for (const auto& [g, w] : m.atoms)
        raw.emplace_back(project_path(cov, g), w / cov.degree);
    }
    return normalize(std::move(raw), path_ops(cov.base));
  };
  if (inner.stress_input) {
    t.stress_input = [cov, inner](std::mt19937_64& rng) {
      auto up = inner.stress_input(rng);
      return std::vector<Vec>{cov.project(up[0])};
    };
  }
  return t;
}

// Factor-k transfer for arity 2 over a regular cover, valid when the inner
// planner is diagonally deck-equivariant up to path projection. The
// certificate is probed empirically at construction.
inline AnalogPlanner equivariant_tc_transfer(const CoveringMap& p,
                                             const AnalogPlanner& s,
                                             int probe_samples = 32,
                                             std::uint64_t probe_seed = 42) {
  if (s.arity != 2)
    throw ArityMismatch("equivariant transfer is implemented for arity 2");
  if (p.deck_order != p.degree)
    throw EquivarianceViolation("cover is not regular");
  // Equivariance certificate: projected plans agree along the diagonal deck
  // action.
  std::mt19937_64 rng(probe_seed);
  for (int trial = 0; trial < probe_samples; ++trial) {
    Vec u = p.total.random_point(rng), v = p.total.random_point(rng);
    Measure<GeoPath> base;
    {
      Measure<GeoPath> m = s.plan({u, v});
      std::vector<std::pair<GeoPath, double>> raw;
      for (const auto& [g, w] : m.atoms)
        raw.emplace_back(project_path(p, g), w);
      base = normalize(std::move(raw), path_ops(p.base));
    }
    for (int g = 1; g < p.deck_order; ++g) {
      Measure<GeoPath> m = s.plan({p.deck(g, u), p.deck(g, v)});
      std::vector<std::pair<GeoPath, double>> raw;
      for (const auto& [gp, w] : m.atoms)
        raw.emplace_back(project_path(p, gp), w);
      auto moved = normalize(std::move(raw), path_ops(p.base));
      if (path_measure_distance(p.base, base, moved) > kSectionTol)
        throw EquivarianceViolation(
            "projected plans differ along the deck action");
    }
  }
  AnalogPlanner t;
  t.name = s.name + "2_equivariant";
  t.space = p.base;
  t.arity = 2;
  t.support_bound = p.degree * s.support_bound;
  CoveringMap cov = p;
  AnalogPlanner inner = s;
  t.plan = [cov, inner](const std::vector<Vec>& in) {
    Vec x1 = cov.base.canonical(in[0]), x2 = cov.base.canonical(in[1]);
    Vec l1 = fiber(cov, x1).front(), l2 = fiber(cov, x2).front();
    std::vector<std::pair<GeoPath, double>> raw;
    for (int g = 0; g < cov.deck_order; ++g) {
      Measure<GeoPath> m = inner.plan({l1, cov.deck(g, l2)});
      for (const auto& [gp, w] : m.atoms)
        raw.emplace_back(project_path(cov, gp), w / cov.degree);
    }
    return normalize(std::move(raw), path_ops(cov.base));
  };
  if (inner.stress_input) {
    t.stress_input = [cov, inner](std::mt19937_64& rng) {
      auto up = inner.stress_input(rng);
      return std::vector<Vec>{cov.project(up[0]), cov.project(up[1])};
    };
  }
  return t;
}

// Coordinate-wise fallback transfer for arbitrary arity: average over all
// lift combinations. Support bound multiplies by degree^r.
inline AnalogPlanner generic_tc_transfer(const CoveringMap& p,
                                         const AnalogPlanner& s) {
  AnalogPlanner t;
  t.name = s.name + std::to_string(s.arity) + "_generic";
  t.space = p.base;
  t.arity = s.arity;
  t.support_bound = s.support_bound;
  for (int i = 0; i < s.arity; ++i) t.support_bound *= p.degree;
  CoveringMap cov = p;
  AnalogPlanner inner = s;
  int r = s.arity;
  t.plan = [cov, inner, r](const std::vector<Vec>& in) {
    std::vector<std::vector<Vec>> fibers;
    for (int i = 0; i < r; ++i)
      fibers.push_back(fiber(cov, cov.base.canonical(in[i])));
    double denom = 1.0;
    for (int i = 0; i < r; ++i) denom *= cov.degree;
    std::vector<std::pair<GeoPath, double>> raw;
    std::vector<int> choice(r, 0);
    while (true) {
      std::vector<Vec> lifted;
      for (int i = 0; i < r; ++i) lifted.push_back(fibers[i][choice[i]]);
      Measure<GeoPath> m = inner.plan(lifted);
      for (const auto& [gp, w] : m.atoms)
        raw.emplace_back(project_path(cov, gp), w / denom);
      int i = 0;
      for (; i < r; ++i) {
        if (++choice[i] < cov.degree) break;
        choice[i] = 0;
      }
      if (i == r) break;
    }
    return normalize(std::move(raw), path_ops(cov.base));
  };
  if (inner.stress_input) {
    t.stress_input = [cov, inner](std::mt19937_64& rng) {
      auto up = inner.stress_input(rng);
      std::vector<Vec> down;
      for (const auto& u : up) down.push_back(cov.project(u));
      return down;
    };
  }
  return t;
}

// Product of two same-arity planners: coordinate-paired paths, multiplied
// weights.
inline AnalogPlanner product_planner(const AnalogPlanner& s1,
                                     const AnalogPlanner& s2) {
  if (s1.arity != s2.arity)
    throw ArityMismatch("product planner factors must share arity");
  AnalogPlanner t;
  t.name = s1.name + "_x_" + s2.name;
  t.space = Space::product(s1.space, s2.space);
  t.arity = s1.arity;
  t.support_bound = s1.support_bound * s2.support_bound;
  if (s1.arity == 1) {
    t.basepoint = s1.basepoint;
    t.basepoint.insert(t.basepoint.end(), s2.basepoint.begin(),
                       s2.basepoint.end());
  }
  AnalogPlanner a = s1, b = s2;
  Space sp = t.space;
  std::size_t na = s1.space.point_dim();
  t.plan = [a, b, sp, na](const std::vector<Vec>& in) {
    std::vector<Vec> in1, in2;
    for (const auto& p : in) {
      in1.emplace_back(p.begin(), p.begin() + na);
      in2.emplace_back(p.begin() + na, p.end());
    }
    Measure<GeoPath> m1 = a.plan(in1), m2 = b.plan(in2);
    std::vector<std::pair<GeoPath, double>> raw;
    for (const auto& [g1, w1] : m1.atoms)
      for (const auto& [g2, w2] : m2.atoms) {
        GeoPath g;
        g.comps = {g1, g2};
        raw.emplace_back(std::move(g), w1 * w2);
      }
    return normalize(std::move(raw), path_ops(sp));
  };
  t.stress_input = [a, b, sp](std::mt19937_64& rng) {
    std::vector<Vec> i1 =
        a.stress_input ? a.stress_input(rng) : std::vector<Vec>{};
    std::vector<Vec> out;
    for (int k = 0; k < a.arity; ++k) {
      Vec p = i1.empty() ? a.space.random_point(rng) : i1[k];
      Vec q = b.space.random_point(rng);
      p.insert(p.end(), q.begin(), q.end());
      out.push_back(std::move(p));
    }
    return out;
  };
  return t;
}

// Chains an arity-2 planner into an arity-r planner by independent legs with
// junctions pinned at the evaluation times i/(r-1).
inline AnalogPlanner chain_planner(const AnalogPlanner& s, int r) {
  if (s.arity != 2) throw ArityMismatch("chain planner needs an arity-2 base");
  if (r < 3) throw ArityMismatch("chain planner needs r >= 3");
  AnalogPlanner t;
  t.name = s.name + std::to_string(r);
  t.space = s.space;
  t.arity = r;
  t.support_bound = 1;
  for (int i = 0; i + 1 < r; ++i) t.support_bound *= s.support_bound;
  AnalogPlanner inner = s;
  t.plan = [inner, r](const std::vector<Vec>& in) {
    // Leg measures, combined independently; junction i pinned at i/(r-1).
    std::vector<std::pair<GeoPath, double>> acc;
    acc.emplace_back(GeoPath{}, 1.0);
    bool first = true;
    for (int i = 0; i + 1 < r; ++i) {
      Measure<GeoPath> leg = inner.plan({in[i], in[i + 1]});
      std::vector<std::pair<GeoPath, double>> next;
      for (const auto& [prefix, wp] : acc)
        for (const auto& [g, wg] : leg.atoms) {
          if (first) {
            next.emplace_back(g, wp * wg);
          } else {
            // Equal leg spans: after the final rescale every junction lands
            // at k/(r-1).
            double tj = double(i) / double(i + 1);
            next.emplace_back(concat_at(prefix, g, tj), wp * wg);
          }
        }
      acc = std::move(next);
      first = false;
    }
    return normalize(std::move(acc), path_ops(inner.space));
  };
  t.stress_input = [inner, r](std::mt19937_64& rng) {
    std::vector<Vec> out;
    auto pair_in = inner.stress_input ? inner.stress_input(rng)
                                      : std::vector<Vec>{};
    for (int i = 0; i < r; ++i)
      out.push_back(pair_in.size() > 1 && i < 2 ? pair_in[i]
                                                : inner.space.random_point(rng));
    return out;
  };
  return t;
}

}  // namespace analogmp
