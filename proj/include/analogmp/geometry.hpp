#pragma once

// Geodesic model spaces (spheres, real projective spaces, circles, tori,
// finite discrete sets, binary products) with exactly evaluable
// piecewise-great-arc paths.
//
// Point encodings:
//   sphere d        -> unit vector in R^{d+1}
//   projective d    -> canonical unit vector (first nonzero coordinate > 0)
//   circle          -> single angle in [0, 2*pi)
//   torus n         -> n angles
//   discrete        -> single integer label stored as double
//   product         -> concatenation of the component encodings

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "analogmp/errors.hpp"
#include "analogmp/measure.hpp"

namespace analogmp {

using Vec = std::vector<double>;

inline constexpr double kPointTol = 1e-9;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec normalized(Vec a) {
  double n = norm(a);
  if (n <= 0.0) throw OutOfDomain("cannot normalize the zero vector");
  for (double& x : a) x /= n;
  return a;
}

inline Vec scaled(Vec a, double c) {
  for (double& x : a) x *= c;
  return a;
}

inline Vec sum(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vec negated(Vec a) { return scaled(std::move(a), -1.0); }

inline Vec diff(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

inline Vec angle_to_vec(double a) { return {std::cos(a), std::sin(a)}; }

// Component of v orthogonal to unit vector u, normalized.
inline Vec ortho_part(const Vec& v, const Vec& u) {
  Vec w = v;
  double c = dot(v, u);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * u[i];
  return normalized(std::move(w));
}

// First standard basis vector not parallel to u, projected orthogonal to u.
inline Vec ortho_completion(const Vec& u) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::abs(std::abs(u[i]) - 1.0) > 1e-6) {
      Vec e(u.size(), 0.0);
      e[i] = 1.0;
      return ortho_part(e, u);
    }
  }
  throw OutOfDomain("no orthogonal completion found");
}

// One great-arc segment: p(s) = cos(s*angle)*u + sin(s*angle)*w on the local
// parameter s in [0,1], occupying [t0,t1] of the global domain.
struct ArcSeg {
  Vec u;
  Vec w;  // unit, orthogonal to u; ignored when angle == 0
  double angle = 0.0;
  double t0 = 0.0;
  double t1 = 1.0;

  Vec eval_local(double s) const {
    if (angle == 0.0) return u;
    double c = std::cos(s * angle), sn = std::sin(s * angle);
    Vec p(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) p[i] = c * u[i] + sn * w[i];
    return p;
  }

  // Signed sweep for planar (circle) arcs: positive = counterclockwise.
  double planar_sign() const {
    if (angle == 0.0 || u.size() != 2) return 1.0;
    return (u[0] * w[1] - u[1] * w[0]) >= 0.0 ? 1.0 : -1.0;
  }
};

// Piecewise great-arc path on [0,1]. Either `segs` (sphere-model spaces) or
// `comps` (product spaces) is populated, never both.
struct GeoPath {
  std::vector<ArcSeg> segs;
  std::vector<GeoPath> comps;
  bool projective = false;  // sphere path pushed down to projective space

  bool is_product() const { return !comps.empty(); }

  double length() const {
    if (is_product()) {
      double s = 0.0;
      for (const auto& c : comps) s += c.length() * c.length();
      return std::sqrt(s);
    }
    double s = 0.0;
    for (const auto& seg : segs) s += seg.angle;
    return s;
  }

  // Raw ambient evaluation (unit vector per sphere factor, concatenated for
  // products).
  Vec eval_ambient(double t) const {
    if (t < -1e-12 || t > 1.0 + 1e-12)
      throw OutOfDomain("path parameter outside [0,1]");
    t = std::min(1.0, std::max(0.0, t));
    if (is_product()) {
      Vec out;
      for (const auto& c : comps) {
        Vec p = c.eval_ambient(t);
        out.insert(out.end(), p.begin(), p.end());
      }
      return out;
    }
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const ArcSeg& sg = segs[i];
      bool last = (i + 1 == segs.size());
      if (t <= sg.t1 + 1e-12 || last) {
        double span = sg.t1 - sg.t0;
        double s = span > 0.0 ? (t - sg.t0) / span : 0.0;
        s = std::min(1.0, std::max(0.0, s));
        return sg.eval_local(s);
      }
    }
    throw OutOfDomain("path has no segments");
  }
};

inline GeoPath constant_path(Vec u) {
  GeoPath g;
  ArcSeg sg;
  sg.u = std::move(u);
  sg.w = Vec(sg.u.size(), 0.0);
  g.segs.push_back(std::move(sg));
  return g;
}

// Arc from u in tangent direction w (unit, orthogonal to u) of given sweep.
inline GeoPath arc_from_dir(Vec u, Vec w, double angle) {
  GeoPath g;
  ArcSeg sg;
  sg.u = std::move(u);
  sg.w = std::move(w);
  sg.angle = angle;
  g.segs.push_back(std::move(sg));
  return g;
}

// Shortest arc between non-antipodal unit vectors; for antipodal pairs the
// connecting great circle is completed deterministically through the first
// suitable standard basis direction.
inline GeoPath arc_between(const Vec& u, const Vec& v) {
  double c = std::max(-1.0, std::min(1.0, dot(u, v)));
  double ang = std::acos(c);
  if (ang < 1e-12) return constant_path(u);
  Vec w;
  if (c <= -1.0 + 1e-12) {
    w = ortho_completion(u);
  } else {
    w = ortho_part(v, u);
  }
  return arc_from_dir(u, std::move(w), ang);
}

// Circle arc from angle a with a signed sweep (positive = counterclockwise),
// represented as a planar great arc.
inline GeoPath circle_arc(double a, double sweep) {
  Vec u = angle_to_vec(a);
  if (sweep == 0.0) return constant_path(u);
  Vec w = sweep > 0.0 ? Vec{-u[1], u[0]} : Vec{u[1], -u[0]};
  return arc_from_dir(std::move(u), std::move(w), std::abs(sweep));
}

namespace detail {

inline void append_rescaled(std::vector<ArcSeg>& dst,
                            const std::vector<ArcSeg>& src, double t0,
                            double t1) {
  double len = 0.0;
  for (const auto& sg : src) len += sg.angle;
  double at = t0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    ArcSeg sg = src[i];
    double frac = len > 0.0 ? sg.angle / len : 1.0 / double(src.size());
    sg.t0 = at;
    at = (i + 1 == src.size()) ? t1 : at + frac * (t1 - t0);
    sg.t1 = at;
    dst.push_back(std::move(sg));
  }
}

}  // namespace detail

// Concatenation with the junction pinned at global parameter tj.
inline GeoPath concat_at(const GeoPath& a, const GeoPath& b, double tj) {
  if (a.is_product() != b.is_product())
    throw EndpointMismatch("cannot concatenate product with non-product path");
  if (a.is_product()) {
    if (a.comps.size() != b.comps.size())
      throw EndpointMismatch("product component count mismatch");
    GeoPath g;
    g.projective = a.projective;
    for (std::size_t i = 0; i < a.comps.size(); ++i)
      g.comps.push_back(concat_at(a.comps[i], b.comps[i], tj));
    return g;
  }
  Vec ea = a.eval_ambient(1.0), sb = b.eval_ambient(0.0);
  Vec d = sum(ea, negated(sb));
  if (norm(d) > kPointTol)
    throw EndpointMismatch("concat endpoints differ beyond tolerance");
  GeoPath g;
  g.projective = a.projective || b.projective;
  detail::append_rescaled(g.segs, a.segs, 0.0, tj);
  detail::append_rescaled(g.segs, b.segs, tj, 1.0);
  return g;
}

// Concatenation with spans proportional to arclength; constant halves split
// evenly when the total length vanishes.
inline GeoPath concat(const GeoPath& a, const GeoPath& b) {
  double la = a.length(), lb = b.length();
  double tj = (la + lb > 0.0) ? la / (la + lb) : 0.5;
  if (tj <= 0.0) tj = 1e-9;
  if (tj >= 1.0) tj = 1.0 - 1e-9;
  return concat_at(a, b, tj);
}

// A geodesic model space descriptor. Immutable; cheap to copy.
class Space {
 public:
  enum class Kind { Sphere, Projective, Circle, Torus, Discrete, Product };

  // Default: the one-point discrete space.
  Space() : kind_(Kind::Discrete), dim_(1) {}

  static Space sphere(int d) { return Space(Kind::Sphere, d); }
  static Space projective(int d) { return Space(Kind::Projective, d); }
  static Space circle() { return Space(Kind::Circle, 1); }
  static Space torus(int n) {
    Space s(Kind::Torus, n);
    for (int i = 0; i < n; ++i) s.comps_.push_back(circle());
    return s;
  }
  static Space discrete(int labels) { return Space(Kind::Discrete, labels); }
  static Space product(Space a, Space b) {
    Space s(Kind::Product, 0);
    s.comps_.push_back(std::move(a));
    s.comps_.push_back(std::move(b));
    return s;
  }

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::vector<Space>& components() const { return comps_; }

  // Length of the point encoding.
  std::size_t point_dim() const {
    switch (kind_) {
      case Kind::Sphere:
      case Kind::Projective:
        return static_cast<std::size_t>(dim_) + 1;
      case Kind::Circle:
      case Kind::Discrete:
        return 1;
      default: {
        std::size_t n = 0;
        for (const auto& c : comps_) n += c.point_dim();
        return n;
      }
    }
  }

  Vec canonical(Vec p) const {
    switch (kind_) {
      case Kind::Sphere:
        return normalized(std::move(p));
      case Kind::Projective: {
        p = normalized(std::move(p));
        for (double c : p) {
          if (std::abs(c) > kPointTol) {
            if (c < 0.0) p = negated(std::move(p));
            break;
          }
        }
        return p;
      }
      case Kind::Circle:
        return {wrap_angle(p[0])};
      case Kind::Discrete:
        return p;
      default: {
        Vec out;
        std::size_t at = 0;
        for (const auto& c : comps_) {
          Vec q(p.begin() + at, p.begin() + at + c.point_dim());
          at += c.point_dim();
          Vec cq = c.canonical(std::move(q));
          out.insert(out.end(), cq.begin(), cq.end());
        }
        return out;
      }
    }
  }

  double distance(const Vec& x, const Vec& y) const {
    switch (kind_) {
      case Kind::Sphere: {
        // Chord-based form: exact at coincident points, unlike acos(dot).
        double chord = norm(diff(x, y));
        if (chord >= 2.0) return kPi;
        return 2.0 * std::asin(0.5 * chord);
      }
      case Kind::Projective: {
        double chord = std::min(norm(diff(x, y)), norm(sum(x, y)));
        if (chord >= std::sqrt(2.0)) return 0.5 * kPi;
        return 2.0 * std::asin(0.5 * chord);
      }
      case Kind::Circle: {
        double d = std::abs(wrap_angle(x[0]) - wrap_angle(y[0]));
        return std::min(d, kTwoPi - d);
      }
      case Kind::Discrete:
        return x[0] == y[0] ? 0.0 : 1.0;
      default: {
        double s = 0.0;
        std::size_t at = 0;
        for (const auto& c : comps_) {
          Vec xc(x.begin() + at, x.begin() + at + c.point_dim());
          Vec yc(y.begin() + at, y.begin() + at + c.point_dim());
          at += c.point_dim();
          double d = c.distance(xc, yc);
          s += d * d;
        }
        return std::sqrt(s);
      }
    }
  }

  bool equal(const Vec& x, const Vec& y, double tol = kPointTol) const {
    return distance(x, y) <= tol;
  }

  // Coordinate-wise closeness of encodings; used for atom equality, where
  // the acos-based metric is numerically too sharp near zero.
  bool close(const Vec& x, const Vec& y, double tol = kPointTol) const {
    switch (kind_) {
      case Kind::Sphere: {
        for (std::size_t i = 0; i < x.size(); ++i)
          if (std::abs(x[i] - y[i]) > tol) return false;
        return true;
      }
      case Kind::Projective: {
        bool same = true, flip = true;
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (std::abs(x[i] - y[i]) > tol) same = false;
          if (std::abs(x[i] + y[i]) > tol) flip = false;
        }
        return same || flip;
      }
      case Kind::Circle: {
        double d = std::abs(wrap_angle(x[0]) - wrap_angle(y[0]));
        return std::min(d, kTwoPi - d) <= tol;
      }
      case Kind::Discrete:
        return x[0] == y[0];
      default: {
        std::size_t at = 0;
        for (const auto& c : comps_) {
          Vec xc(x.begin() + at, x.begin() + at + c.point_dim());
          Vec yc(y.begin() + at, y.begin() + at + c.point_dim());
          at += c.point_dim();
          if (!c.close(xc, yc, tol)) return false;
        }
        return true;
      }
    }
  }

  Vec random_point(std::mt19937_64& rng) const {
    switch (kind_) {
      case Kind::Sphere:
      case Kind::Projective: {
        std::normal_distribution<double> g(0.0, 1.0);
        Vec p(point_dim());
        double n = 0.0;
        do {
          for (double& c : p) c = g(rng);
          n = norm(p);
        } while (n < 1e-6);
        return canonical(std::move(p));
      }
      case Kind::Circle: {
        std::uniform_real_distribution<double> u(0.0, kTwoPi);
        return {u(rng)};
      }
      case Kind::Discrete: {
        std::uniform_int_distribution<int> u(0, dim_ - 1);
        return {static_cast<double>(u(rng))};
      }
      default: {
        Vec out;
        for (const auto& c : comps_) {
          Vec p = c.random_point(rng);
          out.insert(out.end(), p.begin(), p.end());
        }
        return out;
      }
    }
  }

  // Evaluate a path of this space at t, returning the point encoding.
  Vec eval_path(const GeoPath& g, double t) const {
    switch (kind_) {
      case Kind::Sphere:
        return g.eval_ambient(t);
      case Kind::Projective:
        return canonical(g.eval_ambient(t));
      case Kind::Circle: {
        Vec p = g.eval_ambient(t);
        return {wrap_angle(std::atan2(p[1], p[0]))};
      }
      case Kind::Discrete:
        throw NoGeodesic("discrete spaces carry no paths");
      default: {
        Vec out;
        for (std::size_t i = 0; i < comps_.size(); ++i) {
          Vec p = comps_[i].eval_path(g.comps[i], t);
          out.insert(out.end(), p.begin(), p.end());
        }
        return out;
      }
    }
  }

  // Canonical candidate geodesics from x to y, sorted by length.
  std::vector<std::pair<GeoPath, double>> geodesics(const Vec& x,
                                                    const Vec& y) const {
    std::vector<std::pair<GeoPath, double>> out;
    switch (kind_) {
      case Kind::Sphere: {
        double c = std::max(-1.0, std::min(1.0, dot(x, y)));
        if (c <= -1.0 + 1e-12) {
          Vec w = ortho_completion(x);
          out.emplace_back(arc_from_dir(x, w, kPi), kPi);
          out.emplace_back(arc_from_dir(x, negated(w), kPi), kPi);
        } else {
          GeoPath g = arc_between(x, y);
          out.emplace_back(std::move(g), std::acos(c));
        }
        break;
      }
      case Kind::Projective: {
        // Two lifts' arcs pushed down, shortest first.
        Vec v = dot(x, y) >= 0.0 ? y : negated(y);
        double theta = std::min(1.0, std::abs(dot(x, v)));
        double a1 = std::acos(theta);
        if (a1 < 1e-12) {
          out.emplace_back(constant_path(x), 0.0);
          break;
        }
        GeoPath g1 = arc_between(x, v);
        g1.projective = true;
        GeoPath g2 = arc_between(x, negated(v));
        g2.projective = true;
        out.emplace_back(std::move(g1), a1);
        out.emplace_back(std::move(g2), kPi - a1);
        break;
      }
      case Kind::Circle: {
        double delta = wrap_angle(y[0] - x[0]);
        GeoPath ccw = circle_arc(x[0], delta);
        GeoPath cw = circle_arc(x[0], delta - kTwoPi);
        if (delta <= kTwoPi - delta) {
          out.emplace_back(std::move(ccw), delta);
          out.emplace_back(std::move(cw), kTwoPi - delta);
        } else {
          out.emplace_back(std::move(cw), kTwoPi - delta);
          out.emplace_back(std::move(ccw), delta);
        }
        break;
      }
      case Kind::Discrete:
        throw NoGeodesic("discrete spaces carry no geodesics");
      default: {
        // Shortest per component, paired on a shared parameter.
        GeoPath g;
        double s = 0.0;
        std::size_t at = 0;
        for (const auto& c : comps_) {
          Vec xc(x.begin() + at, x.begin() + at + c.point_dim());
          Vec yc(y.begin() + at, y.begin() + at + c.point_dim());
          at += c.point_dim();
          auto gc = c.geodesics(xc, yc);
          g.comps.push_back(std::move(gc.front().first));
          s += gc.front().second * gc.front().second;
        }
        out.emplace_back(std::move(g), std::sqrt(s));
        break;
      }
    }
    return out;
  }

  // Atom ops for points of this space: tolerance equality, exact
  // lexicographic order on the canonical encoding.
  AtomOps<Vec> point_ops(double tol = kPointTol) const {
    AtomOps<Vec> ops;
    Space self = *this;
    ops.eq = [self, tol](const Vec& a, const Vec& b) {
      return self.close(a, b, tol);
    };
    ops.less = [](const Vec& a, const Vec& b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                          b.end());
    };
    return ops;
  }

 private:
  Space(Kind k, int d) : kind_(k), dim_(d) {}

  Kind kind_;
  int dim_;
  std::vector<Space> comps_;
};

// Uniform-grid sup distance between paths; proxy for the uniform metric on
// the path space. Grid endpoints are always included.
inline double path_sup_distance(const Space& space, const GeoPath& a,
                                const GeoPath& b, int grid = 64) {
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    double t = grid > 1 ? double(i) / double(grid - 1) : 0.0;
    worst = std::max(worst, space.distance(space.eval_path(a, t),
                                           space.eval_path(b, t)));
  }
  return worst;
}

// Encoding closeness of two paths on the evaluation grid.
inline bool paths_close(const Space& space, const GeoPath& a, const GeoPath& b,
                        double tol = kPointTol, int grid = 64) {
  for (int i = 0; i < grid; ++i) {
    double t = grid > 1 ? double(i) / double(grid - 1) : 0.0;
    if (!space.close(space.eval_path(a, t), space.eval_path(b, t), tol))
      return false;
  }
  return true;
}

// Atom ops for path atoms: grid-wise encoding equality, order by the grid
// trace encoding.
inline AtomOps<GeoPath> path_ops(const Space& space, double tol = kPointTol,
                                 int grid = 64) {
  AtomOps<GeoPath> ops;
  ops.eq = [space, tol, grid](const GeoPath& a, const GeoPath& b) {
    return paths_close(space, a, b, tol, grid);
  };
  ops.less = [space, grid](const GeoPath& a, const GeoPath& b) {
    for (int i = 0; i < grid; ++i) {
      double t = double(i) / double(grid - 1);
      Vec pa = space.eval_path(a, t), pb = space.eval_path(b, t);
      if (std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(),
                                       pb.end()))
        return true;
      if (std::lexicographical_compare(pb.begin(), pb.end(), pa.begin(),
                                       pa.end()))
        return false;
    }
    return false;
  };
  return ops;
}

}  // namespace analogmp
