#pragma once

// Finite covering maps between model spaces: projection, fiber enumeration,
// deck action for regular covers, path projection, and the transfer p* on
// measures (uniform averaging over fibers).

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "analogmp/errors.hpp"
#include "analogmp/geometry.hpp"
#include "analogmp/measure.hpp"

namespace analogmp {

struct CoveringMap {
  Space total;
  Space base;
  int degree = 1;
  std::function<Vec(const Vec&)> project;
  // Fiber enumeration in a deterministic order.
  std::function<std::vector<Vec>(const Vec&)> fiber;
  // Deck action for regular covers: group element index x point -> point.
  // Element 0 is the identity; deck_order == degree for the covers shipped
  // here.
  std::function<Vec(int, const Vec&)> deck;
  int deck_order = 1;
  std::function<GeoPath(const GeoPath&)> project_path;
};

inline CoveringMap identity_cover(const Space& s) {
  CoveringMap c;
  c.total = s;
  c.base = s;
  c.degree = 1;
  c.deck_order = 1;
  c.project = [s](const Vec& p) { return s.canonical(p); };
  c.fiber = [s](const Vec& p) { return std::vector<Vec>{s.canonical(p)}; };
  c.deck = [](int, const Vec& p) { return p; };
  c.project_path = [](const GeoPath& g) { return g; };
  return c;
}

// Antipodal double cover S^d -> RP^d. Fiber order: canonical lift first.
inline CoveringMap antipodal_cover(int d) {
  CoveringMap c;
  c.total = Space::sphere(d);
  c.base = Space::projective(d);
  c.degree = 2;
  c.deck_order = 2;
  Space base = c.base;
  c.project = [base](const Vec& u) { return base.canonical(u); };
  c.fiber = [base](const Vec& x) {
    Vec u = base.canonical(x);
    return std::vector<Vec>{u, negated(u)};
  };
  c.deck = [](int g, const Vec& u) { return g % 2 == 0 ? u : negated(u); };
  c.project_path = [](const GeoPath& g) {
    GeoPath h = g;
    h.projective = true;
    return h;
  };
  return c;
}

// Degree-k self cover of the circle, z -> z^k. Fiber angles ascending.
inline CoveringMap circle_power_cover(int k) {
  CoveringMap c;
  c.total = Space::circle();
  c.base = Space::circle();
  c.degree = k;
  c.deck_order = k;
  c.project = [k](const Vec& a) { return Vec{wrap_angle(k * a[0])}; };
  c.fiber = [k](const Vec& x) {
    // Ascending deterministic order: (base + 2*pi*j)/k for j = 0..k-1.
    std::vector<Vec> out;
    double base = wrap_angle(x[0]);
    for (int j = 0; j < k; ++j)
      out.push_back({wrap_angle((base + kTwoPi * j) / double(k))});
    return out;
  };
  c.deck = [k](int g, const Vec& a) {
    return Vec{wrap_angle(a[0] + kTwoPi * double(g % k) / double(k))};
  };
  c.project_path = [k](const GeoPath& g) {
    // Angles multiply by k; each arc keeps its span and orientation.
    GeoPath h;
    for (const ArcSeg& sg : g.segs) {
      double a0 = std::atan2(sg.u[1], sg.u[0]);
      double sweep = sg.angle * sg.planar_sign();
      GeoPath arc = circle_arc(wrap_angle(k * a0), k * sweep);
      ArcSeg ns = arc.segs.front();
      ns.t0 = sg.t0;
      ns.t1 = sg.t1;
      h.segs.push_back(std::move(ns));
    }
    return h;
  };
  return c;
}

// Product of two covers; fibers are Cartesian products, first factor fastest
// in the deterministic order.
inline CoveringMap product_cover(const CoveringMap& a, const CoveringMap& b) {
  CoveringMap c;
  c.total = Space::product(a.total, b.total);
  c.base = Space::product(a.base, b.base);
  c.degree = a.degree * b.degree;
  c.deck_order = a.deck_order * b.deck_order;
  std::size_t na = a.total.point_dim();
  std::size_t ba = a.base.point_dim();
  auto split_total = [na](const Vec& p) {
    return std::make_pair(Vec(p.begin(), p.begin() + na),
                          Vec(p.begin() + na, p.end()));
  };
  auto split_base = [ba](const Vec& p) {
    return std::make_pair(Vec(p.begin(), p.begin() + ba),
                          Vec(p.begin() + ba, p.end()));
  };
  c.project = [a, b, split_total](const Vec& p) {
    auto [pa, pb] = split_total(p);
    Vec out = a.project(pa);
    Vec qb = b.project(pb);
    out.insert(out.end(), qb.begin(), qb.end());
    return out;
  };
  c.fiber = [a, b, split_base](const Vec& x) {
    auto [xa, xb] = split_base(x);
    auto fa = a.fiber(xa);
    auto fb = b.fiber(xb);
    std::vector<Vec> out;
    for (const auto& qb : fb)
      for (const auto& qa : fa) {
        Vec p = qa;
        p.insert(p.end(), qb.begin(), qb.end());
        out.push_back(std::move(p));
      }
    return out;
  };
  int da = a.deck_order;
  c.deck = [a, b, da, split_total](int g, const Vec& p) {
    auto [pa, pb] = split_total(p);
    Vec out = a.deck(g % da, pa);
    Vec qb = b.deck(g / da, pb);
    out.insert(out.end(), qb.begin(), qb.end());
    return out;
  };
  c.project_path = [a, b](const GeoPath& g) {
    GeoPath h;
    h.comps.push_back(a.project_path(g.comps.at(0)));
    h.comps.push_back(b.project_path(g.comps.at(1)));
    return h;
  };
  return c;
}

// Fiber with the degree contract enforced.
inline std::vector<Vec> fiber(const CoveringMap& p, const Vec& x) {
  auto f = p.fiber(x);
  if (static_cast<int>(f.size()) != p.degree)
    throw FiberSizeMismatch("fiber size differs from the covering degree");
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (p.total.equal(f[i], f[j]))
        throw FiberSizeMismatch("fiber points are not distinct");
  return f;
}

// Transfer p*: each lift of an atom receives 1/degree of the atom's weight.
// Sections p_* after it: pushing forward along p recovers the input.
inline Measure<Vec> cover_pullback(const CoveringMap& p,
                                   const Measure<Vec>& mu) {
  std::vector<std::pair<Vec, double>> raw;
  for (const auto& [x, w] : mu.atoms) {
    auto f = fiber(p, x);
    for (auto& lift : f) raw.emplace_back(std::move(lift), w / p.degree);
  }
  return detail::lowest_terms(std::move(raw), p.total.point_ops());
}

inline GeoPath project_path(const CoveringMap& p, const GeoPath& g) {
  return p.project_path(g);
}

}  // namespace analogmp
