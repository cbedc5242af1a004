#pragma once

// Exact distances between finite-support measures over a supplied ground
// metric: Wasserstein-1 via the transportation simplex, a brute-force
// spanning-tree oracle for tiny instances, and the Levy-Prokhorov metric via
// max-flow feasibility of the coupling condition.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <tuple>
#include <vector>

#include "analogmp/errors.hpp"
#include "analogmp/geometry.hpp"
#include "analogmp/measure.hpp"

namespace analogmp {

inline constexpr std::size_t kMaxTransportSupport = 64;

struct TransportPlan {
  std::size_t rows = 0, cols = 0;
  // Coupling weights on supp(mu) x supp(nu), row-major.
  std::vector<double> coupling;
  double cost = 0.0;

  double at(std::size_t i, std::size_t j) const { return coupling[i * cols + j]; }
};

namespace detail {

// Transportation simplex on the dense bipartite cost matrix. Deterministic:
// northwest-corner start, Bland-style entering rule (first negative reduced
// cost in row-major order), leaving arc chosen lexicographically among the
// minimizers.
inline TransportPlan transport_simplex(const std::vector<double>& supply,
                                       const std::vector<double>& demand,
                                       const std::vector<double>& cost) {
  const std::size_t m = supply.size(), n = demand.size();
  TransportPlan plan;
  plan.rows = m;
  plan.cols = n;
  plan.coupling.assign(m * n, 0.0);

  std::vector<std::vector<bool>> basis(m, std::vector<bool>(n, false));
  std::vector<std::vector<double>> x(m, std::vector<double>(n, 0.0));

  // Northwest corner initialization; keeps exactly m+n-1 basic cells by
  // admitting zero-flow basic cells on degenerate ties.
  {
    std::vector<double> s = supply, d = demand;
    std::size_t i = 0, j = 0;
    while (i < m && j < n) {
      double q = std::min(s[i], d[j]);
      x[i][j] = q;
      basis[i][j] = true;
      s[i] -= q;
      d[j] -= q;
      if (i + 1 == m && j + 1 == n) break;
      if (s[i] <= d[j] && i + 1 < m)
        ++i;
      else if (j + 1 < n)
        ++j;
      else
        ++i;
    }
  }

  auto compute_duals = [&](std::vector<double>& u, std::vector<double>& v) {
    u.assign(m, std::numeric_limits<double>::quiet_NaN());
    v.assign(n, std::numeric_limits<double>::quiet_NaN());
    u[0] = 0.0;
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (!basis[i][j]) continue;
          if (!std::isnan(u[i]) && std::isnan(v[j])) {
            v[j] = cost[i * n + j] - u[i];
            progress = true;
          } else if (std::isnan(u[i]) && !std::isnan(v[j])) {
            u[i] = cost[i * n + j] - v[j];
            progress = true;
          }
        }
    }
  };

  // Finds the alternating cycle created by adding (ei, ej) to the basis
  // tree. Returns cells in cycle order starting at (ei, ej).
  auto find_cycle = [&](std::size_t ei, std::size_t ej) {
    // Path in the bipartite basis graph from column ej back to row ei.
    std::vector<int> prev_col_row(n, -1), prev_row_col(m, -1);
    std::vector<bool> row_seen(m, false), col_seen(n, false);
    std::queue<std::pair<int, int>> q;  // (0=row,1=col, index)
    q.push({0, int(ei)});
    row_seen[ei] = true;
    while (!q.empty()) {
      auto [kind, idx] = q.front();
      q.pop();
      if (kind == 0) {
        for (std::size_t j = 0; j < n; ++j)
          if (basis[idx][j] && !col_seen[j] &&
              !(std::size_t(idx) == ei && j == ej)) {
            col_seen[j] = true;
            prev_col_row[j] = idx;
            q.push({1, int(j)});
          }
      } else {
        for (std::size_t i = 0; i < m; ++i)
          if (basis[i][idx] && !row_seen[i]) {
            row_seen[i] = true;
            prev_row_col[i] = idx;
            q.push({0, int(i)});
          }
      }
    }
    // Walk back from ej to ei, alternating col/row.
    std::vector<std::pair<std::size_t, std::size_t>> cycle;
    cycle.emplace_back(ei, ej);
    int col = int(ej);
    while (true) {
      int row = prev_col_row[col];
      cycle.emplace_back(std::size_t(row), std::size_t(col));
      if (std::size_t(row) == ei) break;
      col = prev_row_col[row];
      cycle.emplace_back(std::size_t(row), std::size_t(col));
    }
    // cycle = [(ei,ej),(r1,ej),(r1,c1),...,(ei,ck)] with odd positions losing
    // flow. Reorder to start at the entering cell with alternating signs.
    return cycle;
  };

  std::vector<double> u, v;
  const std::size_t max_iters = 10000;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    compute_duals(u, v);
    std::size_t ei = m, ej = n;
    for (std::size_t i = 0; i < m && ei == m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (basis[i][j]) continue;
        double rc = cost[i * n + j] - u[i] - v[j];
        if (rc < -1e-12) {
          ei = i;
          ej = j;
          break;
        }
      }
    if (ei == m) break;  // optimal

    auto cycle = find_cycle(ei, ej);
    // Odd positions in the cycle give up flow.
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leave = 1;
    for (std::size_t k = 1; k < cycle.size(); k += 2) {
      auto [i, j] = cycle[k];
      if (x[i][j] < theta - 1e-15) {
        theta = x[i][j];
        leave = k;
      }
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      auto [i, j] = cycle[k];
      if (k % 2 == 0)
        x[i][j] += theta;
      else
        x[i][j] -= theta;
    }
    auto [li, lj] = cycle[leave];
    basis[li][lj] = false;
    x[li][lj] = 0.0;
    basis[ei][ej] = true;
  }

  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      plan.coupling[i * n + j] = x[i][j];
      total += x[i][j] * cost[i * n + j];
    }
  plan.cost = total;
  return plan;
}

}  // namespace detail

// Exact W1 between two probability measures with a supplied ground metric.
template <class A, class W, class G>
TransportPlan wasserstein1_plan(const Measure<A, W>& mu,
                                const Measure<A, W>& nu, const G& g) {
  const std::size_t m = mu.atoms.size(), n = nu.atoms.size();
  if (m > kMaxTransportSupport || n > kMaxTransportSupport)
    throw SupportTooLarge("transport supports are capped at 64 atoms");
  if (m == 0 || n == 0) throw NotNormalized("transport needs nonempty measures");
  std::vector<double> supply(m), demand(n), cost(m * n);
  for (std::size_t i = 0; i < m; ++i)
    supply[i] = WeightTraits<W>::to_double(mu.atoms[i].second);
  for (std::size_t j = 0; j < n; ++j)
    demand[j] = WeightTraits<W>::to_double(nu.atoms[j].second);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost[i * n + j] = g(mu.atoms[i].first, nu.atoms[j].first);
  return detail::transport_simplex(supply, demand, cost);
}

template <class A, class W, class G>
double wasserstein1(const Measure<A, W>& mu, const Measure<A, W>& nu,
                    const G& g) {
  return wasserstein1_plan(mu, nu, g).cost;
}

// Brute-force oracle: minimum cost over all spanning-tree basic feasible
// solutions of the transport polytope. Supports capped at 3x3.
template <class A, class W, class G>
double w1_oracle(const Measure<A, W>& mu, const Measure<A, W>& nu,
                 const G& g) {
  const std::size_t m = mu.atoms.size(), n = nu.atoms.size();
  if (m > 3 || n > 3) throw SupportTooLarge("oracle supports are capped at 3x3");
  std::vector<double> a(m), b(n), cost(m * n);
  for (std::size_t i = 0; i < m; ++i)
    a[i] = WeightTraits<W>::to_double(mu.atoms[i].second);
  for (std::size_t j = 0; j < n; ++j)
    b[j] = WeightTraits<W>::to_double(nu.atoms[j].second);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost[i * n + j] = g(mu.atoms[i].first, nu.atoms[j].first);

  const std::size_t cells = m * n, pick = m + n - 1;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> idx(pick);
  // Enumerate all cell subsets of size m+n-1.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                          std::size_t depth) {
    if (depth == pick) {
      // Solve flows by leaf elimination; reject cyclic or disconnected sets.
      std::vector<double> ra = a, rb = b, flow(pick, 0.0);
      std::vector<bool> used(pick, false);
      std::size_t solved = 0;
      bool progress = true;
      while (progress && solved < pick) {
        progress = false;
        for (std::size_t k = 0; k < pick; ++k) {
          if (used[k]) continue;
          std::size_t i = idx[k] / n, j = idx[k] % n;
          int row_deg = 0, col_deg = 0;
          for (std::size_t l = 0; l < pick; ++l) {
            if (used[l]) continue;
            if (idx[l] / n == i) ++row_deg;
            if (idx[l] % n == j) ++col_deg;
          }
          if (row_deg == 1) {
            flow[k] = ra[i];
            rb[j] -= ra[i];
            ra[i] = 0.0;
          } else if (col_deg == 1) {
            flow[k] = rb[j];
            ra[i] -= rb[j];
            rb[j] = 0.0;
          } else {
            continue;
          }
          used[k] = true;
          ++solved;
          progress = true;
        }
      }
      if (solved < pick) return;  // contains a cycle
      for (double r : ra)
        if (std::abs(r) > 1e-9) return;
      for (double r : rb)
        if (std::abs(r) > 1e-9) return;
      double c = 0.0;
      bool feasible = true;
      for (std::size_t k = 0; k < pick; ++k) {
        if (flow[k] < -1e-12) feasible = false;
        c += std::max(0.0, flow[k]) * cost[idx[k]];
      }
      if (feasible) best = std::min(best, c);
      return;
    }
    for (std::size_t c = start; c + (pick - depth) <= cells; ++c) {
      idx[depth] = c;
      rec(c + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

namespace detail {

// Edmonds-Karp max flow on a small dense network; node 0 = source, last =
// sink.
inline double max_flow(std::vector<std::vector<double>> cap) {
  const std::size_t n = cap.size();
  double total = 0.0;
  while (true) {
    std::vector<int> prev(n, -1);
    prev[0] = 0;
    std::queue<std::size_t> q;
    q.push(0);
    while (!q.empty() && prev[n - 1] < 0) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t v = 0; v < n; ++v)
        if (prev[v] < 0 && cap[u][v] > 1e-15) {
          prev[v] = int(u);
          q.push(v);
        }
    }
    if (prev[n - 1] < 0) break;
    double aug = std::numeric_limits<double>::infinity();
    for (std::size_t v = n - 1; v != 0; v = std::size_t(prev[v]))
      aug = std::min(aug, cap[prev[v]][v]);
    for (std::size_t v = n - 1; v != 0; v = std::size_t(prev[v])) {
      cap[prev[v]][v] -= aug;
      cap[v][prev[v]] += aug;
    }
    total += aug;
  }
  return total;
}

}  // namespace detail

// Levy-Prokhorov distance: smallest eps admitting a coupling that places mass
// at most eps on pairs at ground distance above eps (Strassen's condition,
// checked by max-flow over the allowed pairs).
template <class A, class W, class G>
double levy_prokhorov(const Measure<A, W>& mu, const Measure<A, W>& nu,
                      const G& g) {
  const std::size_t m = mu.atoms.size(), n = nu.atoms.size();
  if (m > kMaxTransportSupport || n > kMaxTransportSupport)
    throw SupportTooLarge("transport supports are capped at 64 atoms");
  std::vector<double> a(m), b(n), dist(m * n);
  for (std::size_t i = 0; i < m; ++i)
    a[i] = WeightTraits<W>::to_double(mu.atoms[i].second);
  for (std::size_t j = 0; j < n; ++j)
    b[j] = WeightTraits<W>::to_double(nu.atoms[j].second);
  double diam = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      dist[i * n + j] = g(mu.atoms[i].first, nu.atoms[j].first);
      diam = std::max(diam, dist[i * n + j]);
    }

  auto feasible = [&](double eps) {
    const std::size_t nodes = m + n + 2;
    std::vector<std::vector<double>> cap(nodes,
                                         std::vector<double>(nodes, 0.0));
    for (std::size_t i = 0; i < m; ++i) cap[0][1 + i] = a[i];
    for (std::size_t j = 0; j < n; ++j) cap[1 + m + j][nodes - 1] = b[j];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (dist[i * n + j] <= eps + 1e-15) cap[1 + i][1 + m + j] = 2.0;
    return detail::max_flow(std::move(cap)) >= 1.0 - eps - 1e-12;
  };

  // Bracket with the pairwise distances as candidate thresholds, then binary
  // search to 1e-9.
  double lo = 0.0, hi = std::max(1.0, diam);
  if (feasible(0.0)) return 0.0;
  std::vector<double> cands(dist);
  cands.push_back(1.0);
  std::sort(cands.begin(), cands.end());
  for (double c : cands) {
    if (c <= lo || c >= hi) continue;
    if (feasible(c))
      hi = c;
    else
      lo = c;
  }
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// W1 between measures on paths of one space, with the uniform-grid sup
// distance as ground metric.
inline double path_measure_distance(const Space& space,
                                    const Measure<GeoPath>& mu,
                                    const Measure<GeoPath>& nu,
                                    int grid = 64) {
  std::function<double(const GeoPath&, const GeoPath&)> g =
      [&space, grid](const GeoPath& a, const GeoPath& b) {
        return path_sup_distance(space, a, b, grid);
      };
  return wasserstein1(mu, nu, g);
}

}  // namespace analogmp
