#pragma once

// Finitely supported measures in lowest terms: every measure is kept with
// positive weights, pairwise distinct atoms, and atoms in a canonical order,
// so that equal measures compare equal as data.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "analogmp/errors.hpp"

namespace analogmp {

// Equality and ordering for atoms of type A. Equality may be tolerance-based
// (geometric points); `less` is an exact strict order used only to make the
// normal form deterministic.
template <class A>
struct AtomOps {
  std::function<bool(const A&, const A&)> eq;
  std::function<bool(const A&, const A&)> less;
};

template <class W>
struct WeightTraits {
  static constexpr W zero_tol() { return W(0); }
  static constexpr W mass_tol() { return W(0); }
  static double to_double(const W& w) { return static_cast<double>(w); }
};

template <>
struct WeightTraits<double> {
  static constexpr double zero_tol() { return 1e-12; }
  static constexpr double mass_tol() { return 1e-9; }
  static double to_double(double w) { return w; }
};

// A finitely supported measure in lowest terms. Probability measures are the
// same data with total mass 1; `normalize` enforces that refinement.
template <class A, class W = double>
struct Measure {
  std::vector<std::pair<A, W>> atoms;

  std::size_t support_size() const { return atoms.size(); }

  W total() const {
    W s(0);
    for (const auto& [a, w] : atoms) s += w;
    return s;
  }

  // Mass of a single atom; zero if absent.
  W mass(const A& x, const AtomOps<A>& ops) const {
    for (const auto& [a, w] : atoms)
      if (ops.eq(a, x)) return w;
    return W(0);
  }
};

namespace detail {

// Merge tolerance-equal atoms by a stable left fold, then sort canonically.
// Supports are small throughout, so the quadratic merge is fine.
template <class A, class W>
Measure<A, W> lowest_terms(std::vector<std::pair<A, W>> raw,
                           const AtomOps<A>& ops) {
  Measure<A, W> out;
  for (auto& [a, w] : raw) {
    if (w < W(0) && -w <= WeightTraits<W>::zero_tol()) w = W(0);
    bool merged = false;
    for (auto& [b, v] : out.atoms) {
      if (ops.eq(b, a)) {
        v += w;
        merged = true;
        break;
      }
    }
    if (!merged) out.atoms.emplace_back(std::move(a), w);
  }
  std::erase_if(out.atoms, [](const auto& p) {
    return p.second <= WeightTraits<W>::zero_tol();
  });
  std::stable_sort(out.atoms.begin(), out.atoms.end(),
                   [&](const auto& p, const auto& q) {
                     return ops.less(p.first, q.first);
                   });
  return out;
}

}  // namespace detail

// Lowest-terms form with no constraint on the total mass.
template <class A, class W = double>
Measure<A, W> normalize_finite(std::vector<std::pair<A, W>> raw,
                               const AtomOps<A>& ops) {
  for (const auto& [a, w] : raw)
    if (w < W(0) && -w > WeightTraits<W>::zero_tol())
      throw NegativeWeight("negative weight in measure");
  return detail::lowest_terms(std::move(raw), ops);
}

// Probability-measure normal form: mass must be 1 up to mass_tol, and is
// rescaled to exactly 1 afterwards.
template <class A, class W = double>
Measure<A, W> normalize(std::vector<std::pair<A, W>> raw,
                        const AtomOps<A>& ops) {
  auto m = normalize_finite(std::move(raw), ops);
  W tot = m.total();
  W dev = tot - W(1);
  if (dev < W(0)) dev = -dev;
  if (dev > WeightTraits<W>::mass_tol() || !(tot > W(0)))
    throw NotNormalized("total mass differs from 1");
  if (!(tot == W(1)))
    for (auto& [a, w] : m.atoms) w = w / tot;
  return m;
}

template <class A, class W = double>
Measure<A, W> dirac(A x) {
  Measure<A, W> m;
  m.atoms.emplace_back(std::move(x), W(1));
  return m;
}

template <class A, class B, class W, class F>
Measure<B, W> pushforward(F&& f, const Measure<A, W>& mu,
                          const AtomOps<B>& target_ops) {
  std::vector<std::pair<B, W>> raw;
  raw.reserve(mu.atoms.size());
  for (const auto& [a, w] : mu.atoms) raw.emplace_back(f(a), w);
  return detail::lowest_terms(std::move(raw), target_ops);
}

// Monad multiplication: weights of inner atoms scale by the outer weight of
// their measure and accumulate.
template <class A, class W>
Measure<A, W> flatten(const Measure<Measure<A, W>, W>& big,
                      const AtomOps<A>& inner_ops) {
  std::vector<std::pair<A, W>> raw;
  for (const auto& [mu, s] : big.atoms)
    for (const auto& [x, t] : mu.atoms) raw.emplace_back(x, s * t);
  return detail::lowest_terms(std::move(raw), inner_ops);
}

template <class A, class B>
AtomOps<std::pair<A, B>> pair_ops(const AtomOps<A>& oa, const AtomOps<B>& ob) {
  AtomOps<std::pair<A, B>> ops;
  ops.eq = [oa, ob](const std::pair<A, B>& p, const std::pair<A, B>& q) {
    return oa.eq(p.first, q.first) && ob.eq(p.second, q.second);
  };
  ops.less = [oa, ob](const std::pair<A, B>& p, const std::pair<A, B>& q) {
    if (oa.less(p.first, q.first)) return true;
    if (oa.less(q.first, p.first)) return false;
    return ob.less(p.second, q.second);
  };
  return ops;
}

// External product: independent pairing of two measures.
template <class A, class B, class W>
Measure<std::pair<A, B>, W> boxtimes(const Measure<A, W>& mu,
                                     const Measure<B, W>& nu,
                                     const AtomOps<A>& oa,
                                     const AtomOps<B>& ob) {
  std::vector<std::pair<std::pair<A, B>, W>> raw;
  raw.reserve(mu.atoms.size() * nu.atoms.size());
  for (const auto& [x, t] : mu.atoms)
    for (const auto& [y, s] : nu.atoms)
      raw.emplace_back(std::make_pair(x, y), t * s);
  return detail::lowest_terms(std::move(raw), pair_ops(oa, ob));
}

// Marginal pushforwards along the two projections; retracts boxtimes.
template <class A, class B, class W>
std::pair<Measure<A, W>, Measure<B, W>> marginals(
    const Measure<std::pair<A, B>, W>& pi, const AtomOps<A>& oa,
    const AtomOps<B>& ob) {
  auto left = pushforward<std::pair<A, B>, A, W>(
      [](const std::pair<A, B>& p) { return p.first; }, pi, oa);
  auto right = pushforward<std::pair<A, B>, B, W>(
      [](const std::pair<A, B>& p) { return p.second; }, pi, ob);
  return {std::move(left), std::move(right)};
}

// Atom-wise addition of finite measures; total mass adds.
template <class A, class W>
Measure<A, W> add(const Measure<A, W>& mu, const Measure<A, W>& nu,
                  const AtomOps<A>& ops) {
  std::vector<std::pair<A, W>> raw(mu.atoms);
  raw.insert(raw.end(), nu.atoms.begin(), nu.atoms.end());
  return detail::lowest_terms(std::move(raw), ops);
}

// Membership predicate for relative measures: all atoms map to one point of
// the target.
template <class A, class B>
struct RelativeConstraint {
  std::function<B(const A&)> map;
  std::function<bool(const B&, const B&)> target_eq;
};

template <class A, class B, class W>
bool check_relative(const Measure<A, W>& mu,
                    const RelativeConstraint<A, B>& c) {
  if (mu.atoms.empty()) return true;
  B first = c.map(mu.atoms.front().first);
  for (const auto& [a, w] : mu.atoms)
    if (!c.target_eq(c.map(a), first)) return false;
  return true;
}

template <class A, class W>
bool measures_equal(const Measure<A, W>& mu, const Measure<A, W>& nu,
                    const AtomOps<A>& ops, W weight_tol = WeightTraits<W>::mass_tol()) {
  if (mu.atoms.size() != nu.atoms.size()) return false;
  for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
    if (!ops.eq(mu.atoms[i].first, nu.atoms[i].first)) return false;
    W d = mu.atoms[i].second - nu.atoms[i].second;
    if (d < W(0)) d = -d;
    if (d > weight_tol) return false;
  }
  return true;
}

// Largest atom-weight discrepancy between two measures; infinity proxy (2.0,
// all masses are <= 1) when supports do not match up.
template <class A, class W>
double measure_max_error(const Measure<A, W>& mu, const Measure<A, W>& nu,
                         const AtomOps<A>& ops) {
  if (mu.atoms.size() != nu.atoms.size()) return 2.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
    if (!ops.eq(mu.atoms[i].first, nu.atoms[i].first)) return 2.0;
    double d = std::abs(WeightTraits<W>::to_double(mu.atoms[i].second) -
                        WeightTraits<W>::to_double(nu.atoms[i].second));
    worst = std::max(worst, d);
  }
  return worst;
}

// Ops for measures-as-atoms (needed to form measures of measures).
template <class A, class W>
AtomOps<Measure<A, W>> measure_atom_ops(const AtomOps<A>& inner,
                                        W weight_tol = WeightTraits<W>::mass_tol()) {
  AtomOps<Measure<A, W>> ops;
  ops.eq = [inner, weight_tol](const Measure<A, W>& m, const Measure<A, W>& n) {
    return measures_equal(m, n, inner, weight_tol);
  };
  ops.less = [inner](const Measure<A, W>& m, const Measure<A, W>& n) {
    if (m.atoms.size() != n.atoms.size())
      return m.atoms.size() < n.atoms.size();
    for (std::size_t i = 0; i < m.atoms.size(); ++i) {
      if (inner.less(m.atoms[i].first, n.atoms[i].first)) return true;
      if (inner.less(n.atoms[i].first, m.atoms[i].first)) return false;
      if (m.atoms[i].second < n.atoms[i].second) return true;
      if (n.atoms[i].second < m.atoms[i].second) return false;
    }
    return false;
  };
  return ops;
}

// Ready-made ops for discrete integer-labelled atoms.
inline AtomOps<int> int_ops() {
  AtomOps<int> ops;
  ops.eq = [](int a, int b) { return a == b; };
  ops.less = [](int a, int b) { return a < b; };
  return ops;
}

}  // namespace analogmp
