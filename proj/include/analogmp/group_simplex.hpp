#pragma once

// Finite groups acting on finitely supported points of the simplex with
// vertex set G: left translation, torsion fixed points (barycenters of
// power faces), and exhaustive free-action probes on rational grids.

#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "analogmp/errors.hpp"
#include "analogmp/measure.hpp"
#include "analogmp/rational.hpp"

namespace analogmp {

class FiniteGroup {
 public:
  // Verifies the group laws exhaustively at construction.
  static FiniteGroup from_table(std::vector<std::string> labels,
                                std::vector<std::vector<int>> table) {
    FiniteGroup g;
    g.labels_ = std::move(labels);
    g.table_ = std::move(table);
    const int n = static_cast<int>(g.labels_.size());
    if (static_cast<int>(g.table_.size()) != n)
      throw ConfigError("multiplication table is not square");
    for (const auto& row : g.table_) {
      if (static_cast<int>(row.size()) != n)
        throw ConfigError("multiplication table is not square");
      for (int v : row)
        if (v < 0 || v >= n) throw ConfigError("table entry out of range");
    }
    // Identity.
    g.identity_ = -1;
    for (int e = 0; e < n; ++e) {
      bool ok = true;
      for (int h = 0; h < n; ++h)
        if (g.table_[e][h] != h || g.table_[h][e] != h) {
          ok = false;
          break;
        }
      if (ok) {
        g.identity_ = e;
        break;
      }
    }
    if (g.identity_ < 0) throw ConfigError("no identity element");
    // Inverses.
    g.inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (g.table_[a][b] == g.identity_ && g.table_[b][a] == g.identity_)
          g.inverse_[a] = b;
    for (int a = 0; a < n; ++a)
      if (g.inverse_[a] < 0) throw ConfigError("missing inverse");
    // Associativity.
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (g.table_[g.table_[a][b]][c] != g.table_[a][g.table_[b][c]])
            throw ConfigError("multiplication table is not associative");
    return g;
  }

  // Plain-text table: one row per element, whitespace-separated labels; the
  // element order is the first row (which must be the identity row).
  static FiniteGroup parse(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::vector<std::string> row;
      std::string tok;
      while (ls >> tok) row.push_back(tok);
      if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ConfigError("empty group table");
    const auto& order = rows.front();
    auto index_of = [&](const std::string& s) {
      for (std::size_t i = 0; i < order.size(); ++i)
        if (order[i] == s) return static_cast<int>(i);
      throw ConfigError("unknown label in group table: " + s);
    };
    std::vector<std::vector<int>> table;
    for (const auto& row : rows) {
      if (row.size() != order.size())
        throw ConfigError("ragged group table row");
      std::vector<int> r;
      for (const auto& s : row) r.push_back(index_of(s));
      table.push_back(std::move(r));
    }
    return from_table(order, std::move(table));
  }

  static FiniteGroup cyclic(int n) {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
      labels.push_back("g" + std::to_string(i));
      for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
    }
    return from_table(std::move(labels), std::move(table));
  }

  // Dihedral group of order 2n: elements r^i and s r^i.
  static FiniteGroup dihedral(int n) {
    const int m = 2 * n;
    std::vector<std::string> labels(m);
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    auto enc = [n](int flip, int rot) { return flip * n + ((rot % n) + n) % n; };
    for (int f = 0; f < 2; ++f)
      for (int r = 0; r < n; ++r)
        labels[enc(f, r)] = (f ? "sr" : "r") + std::to_string(r);
    for (int f1 = 0; f1 < 2; ++f1)
      for (int r1 = 0; r1 < n; ++r1)
        for (int f2 = 0; f2 < 2; ++f2)
          for (int r2 = 0; r2 < n; ++r2) {
            // (s^f1 r^r1)(s^f2 r^r2) = s^(f1+f2) r^(r2 + (f2 ? -r1 : r1))
            int f = (f1 + f2) % 2;
            int r = f2 ? (r2 - r1) : (r2 + r1);
            table[enc(f1, r1)][enc(f2, r2)] = enc(f, r);
          }
    return from_table(std::move(labels), std::move(table));
  }

  // Quaternion group {1,-1,i,-i,j,-j,k,-k}.
  static FiniteGroup quaternion8() {
    // Encode q = s * b with s in {+,-} and b in {1,i,j,k}.
    auto mul = [](int a, int b) {
      int sa = a / 4, ba = a % 4, sb = b / 4, bb = b % 4;
      static const int base[4][4] = {{0, 1, 2, 3},
                                     {1, 0, 3, 2},
                                     {2, 3, 0, 1},
                                     {3, 2, 1, 0}};
      static const int sign[4][4] = {{0, 0, 0, 0},
                                     {0, 1, 0, 1},
                                     {0, 1, 1, 0},
                                     {0, 0, 1, 1}};
      int s = (sa + sb + sign[ba][bb]) % 2;
      return s * 4 + base[ba][bb];
    };
    std::vector<std::string> labels = {"1", "i", "j", "k",
                                       "-1", "-i", "-j", "-k"};
    std::vector<std::vector<int>> table(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) table[a][b] = mul(a, b);
    return from_table(std::move(labels), std::move(table));
  }

  int size() const { return static_cast<int>(labels_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }

  int element_order(int g) const {
    int p = g, m = 1;
    while (p != identity_) {
      p = mul(p, g);
      ++m;
    }
    return m;
  }

 private:
  FiniteGroup() = default;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
  std::vector<int> inverse_;
};

// A finitely supported point of the simplex on G: a probability measure over
// element indices, with exact rational weights.
using SimplexPoint = Measure<int, Rat>;

inline SimplexPoint act(const FiniteGroup& G, int g, const SimplexPoint& xi) {
  std::vector<std::pair<int, Rat>> raw;
  for (const auto& [x, w] : xi.atoms) raw.emplace_back(G.mul(g, x), w);
  return detail::lowest_terms(std::move(raw), int_ops());
}

// Barycenter of the face spanned by the powers of g; fixed by g exactly.
inline SimplexPoint torsion_fixed_point_witness(const FiniteGroup& G, int g) {
  if (g == G.identity())
    throw ConfigError("torsion witness requires a nontrivial element");
  int m = G.element_order(g);
  std::vector<std::pair<int, Rat>> raw;
  int p = G.identity();
  for (int i = 0; i < m; ++i) {
    raw.emplace_back(p, Rat(1, m));
    p = G.mul(p, g);
  }
  return detail::lowest_terms(std::move(raw), int_ops());
}

inline int skeleton_index(const SimplexPoint& xi) {
  return static_cast<int>(xi.support_size()) - 1;
}

struct FreeActionReport {
  bool searched_finite_group = false;
  long long grid_points_checked = 0;
  long long fixed_points_found = 0;
  // For the finite-group search: one exemplar fixed point if any.
  std::optional<std::pair<int, SimplexPoint>> exemplar;
};

namespace detail {

template <class F>
void enumerate_compositions(int total, int slots, std::vector<int>& parts,
                            F&& visit) {
  if (slots == 1) {
    parts.push_back(total);
    visit(parts);
    parts.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    parts.push_back(k);
    enumerate_compositions(total - k, slots - 1, parts, visit);
    parts.pop_back();
  }
}

}  // namespace detail

// Searches rational-grid points of the simplex on G (denominators up to q,
// plus all power-face barycenters) for a fixed point of some nontrivial
// element. Any finite group with |G| > 1 yields one.
inline FreeActionReport free_action_probe_group(const FiniteGroup& G, int q) {
  FreeActionReport rep;
  rep.searched_finite_group = true;
  const int n = G.size();
  auto consider = [&](const SimplexPoint& xi) {
    ++rep.grid_points_checked;
    for (int g = 0; g < n; ++g) {
      if (g == G.identity()) continue;
      if (measures_equal(act(G, g, xi), xi, int_ops(), Rat(0))) {
        ++rep.fixed_points_found;
        if (!rep.exemplar) rep.exemplar = {g, xi};
      }
    }
  };
  for (int den = 1; den <= q; ++den) {
    std::vector<int> parts;
    detail::enumerate_compositions(den, n, parts, [&](const std::vector<int>& p) {
      std::vector<std::pair<int, Rat>> raw;
      for (int i = 0; i < n; ++i)
        if (p[i] > 0) raw.emplace_back(i, Rat(p[i], den));
      consider(detail::lowest_terms(std::move(raw), int_ops()));
    });
  }
  // Power-face barycenters cover element orders beyond the grid denominator.
  for (int g = 0; g < n; ++g)
    if (g != G.identity()) consider(torsion_fixed_point_witness(G, g));
  return rep;
}

// Shift model of the integers: atoms are labels in [0, w), a shift by s maps
// label x to x + s. Exhaustively verifies that no shift 1 <= s < w fixes any
// rational grid point (denominator exactly q) supported inside the window.
inline FreeActionReport free_action_probe_shift(int q, int w) {
  FreeActionReport rep;
  std::vector<int> parts;
  detail::enumerate_compositions(q, w, parts, [&](const std::vector<int>& p) {
    std::vector<std::pair<int, Rat>> raw;
    for (int i = 0; i < w; ++i)
      if (p[i] > 0) raw.emplace_back(i, Rat(p[i], q));
    SimplexPoint xi = detail::lowest_terms(std::move(raw), int_ops());
    if (xi.atoms.empty()) return;
    ++rep.grid_points_checked;
    for (int s = 1; s < w; ++s) {
      std::vector<std::pair<int, Rat>> shifted;
      for (const auto& [x, wt] : xi.atoms) shifted.emplace_back(x + s, wt);
      SimplexPoint sx = detail::lowest_terms(std::move(shifted), int_ops());
      if (measures_equal(sx, xi, int_ops(), Rat(0))) ++rep.fixed_points_found;
    }
  });
  return rep;
}

}  // namespace analogmp
