#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "linext/errors.hpp"
#include "linext/poset.hpp"

namespace linext {

/// System A x <= b over `ambient` coordinates; `fixed` pins coordinates to
/// constants.  Pinned coordinates are folded into b and carry zero columns.
struct ConstraintSystem {
  int ambient = 0;
  std::vector<std::vector<long>> A;
  std::vector<long> b;
  std::map<int, long> fixed;

  void check() const {
    if (A.size() != b.size()) throw dimension_mismatch("constraint rows inconsistent with b");
    for (const auto& row : A) {
      if (static_cast<int>(row.size()) != ambient)
        throw dimension_mismatch("constraint row width inconsistent with ambient");
      for (auto [coord, val] : fixed)
        if (row[coord] != 0) throw internal_contradiction("fixed coordinate has active column");
      (void)fixed;
    }
  }

  std::vector<int> free_coords() const {
    std::vector<int> out;
    for (int j = 0; j < ambient; ++j)
      if (!fixed.count(j)) out.push_back(j);
    return out;
  }

  /// Pins coordinate j to `val`, folding it into b and dropping rows that
  /// become vacuous.  An infeasible 0 <= b row is a construction bug here.
  void fix_coordinate(int j, long val) {
    if (j < 0 || j >= ambient) throw label_out_of_range("fix_coordinate: bad coordinate");
    if (fixed.count(j)) {
      if (fixed[j] != val) throw internal_contradiction("coordinate pinned to two values");
      return;
    }
    fixed[j] = val;
    std::vector<std::vector<long>> A2;
    std::vector<long> b2;
    for (std::size_t r = 0; r < A.size(); ++r) {
      auto row = A[r];
      long rhs = b[r] - row[j] * val;
      row[j] = 0;
      bool allzero = std::all_of(row.begin(), row.end(), [](long v) { return v == 0; });
      if (allzero) {
        if (rhs < 0) throw internal_contradiction("pinning made a row infeasible");
        continue;
      }
      A2.push_back(std::move(row));
      b2.push_back(rhs);
    }
    A = std::move(A2);
    b = std::move(b2);
  }

  /// Coefficient matrix restricted to free columns, zero rows dropped; the
  /// input to the TU check.
  std::vector<std::vector<long>> active_matrix() const {
    const auto free = free_coords();
    std::vector<std::vector<long>> M;
    for (const auto& row : A) {
      std::vector<long> r;
      r.reserve(free.size());
      bool nonzero = false;
      for (int j : free) {
        r.push_back(row[j]);
        nonzero = nonzero || row[j] != 0;
      }
      if (nonzero) M.push_back(std::move(r));
    }
    return M;
  }
};

/// O_P: 0 <= alpha_x <= 1 and alpha_u <= alpha_v per cover u < v.
inline ConstraintSystem order_polytope(const Poset& p) {
  const int n = p.size();
  ConstraintSystem c;
  c.ambient = n;
  for (int x = 0; x < n; ++x) {
    std::vector<long> lo(n, 0), hi(n, 0);
    lo[x] = -1;
    hi[x] = 1;
    c.A.push_back(std::move(lo));
    c.b.push_back(0);
    c.A.push_back(std::move(hi));
    c.b.push_back(1);
  }
  for (auto [u, v] : p.cover_relations()) {
    std::vector<long> row(n, 0);
    row[u] = 1;
    row[v] = -1;
    c.A.push_back(std::move(row));
    c.b.push_back(0);
  }
  return c;
}

/// All maximal chains, as element lists bottom-up.
inline std::vector<std::vector<int>> maximal_chains(const Poset& p) {
  std::vector<std::vector<int>> out;
  if (p.size() == 0) return out;
  const auto covers = p.cover_relations();
  std::vector<std::vector<int>> succ(p.size());
  for (auto [u, v] : covers) succ[u].push_back(v);
  std::vector<int> chain;
  auto rec = [&](auto&& self, int u) -> void {
    chain.push_back(u);
    if (p.is_maximal(u)) {
      out.push_back(chain);
    } else {
      for (int v : succ[u]) self(self, v);
    }
    chain.pop_back();
  };
  for (int u = 0; u < p.size(); ++u)
    if (p.is_minimal(u)) rec(rec, u);
  return out;
}

/// S_P: beta >= 0 and sum over each maximal chain <= 1.
inline ConstraintSystem chain_polytope(const Poset& p) {
  const int n = p.size();
  ConstraintSystem c;
  c.ambient = n;
  for (int x = 0; x < n; ++x) {
    std::vector<long> lo(n, 0);
    lo[x] = -1;
    c.A.push_back(std::move(lo));
    c.b.push_back(0);
  }
  for (const auto& ch : maximal_chains(p)) {
    std::vector<long> row(n, 0);
    for (int x : ch) row[x] = 1;
    c.A.push_back(std::move(row));
    c.b.push_back(1);
  }
  return c;
}

/// Slices S_0..S_k of O_P along the chain z_1 < ... < z_k:
/// S_i pins alpha_x = 0 for x <= z_i and alpha_x = 1 for x >= z_{i+1}.
inline std::vector<ConstraintSystem> slices(const Poset& p, const std::vector<int>& zchain) {
  const int k = static_cast<int>(zchain.size());
  for (int i = 0; i < k; ++i) {
    p.check_label(zchain[i]);
    if (i + 1 < k && !p.less(zchain[i], zchain[i + 1]))
      throw precondition_violated("slices: fixed elements must form a chain in order");
  }
  std::vector<ConstraintSystem> out;
  const ConstraintSystem base = order_polytope(p);
  for (int i = 0; i <= k; ++i) {
    ConstraintSystem s = base;
    for (int j = 0; j < i; ++j) {
      const int z = zchain[j];
      s.fix_coordinate(z, 0);
      Mask below = p.below(z);
      while (below) {
        int u = lowest_bit(below);
        below &= below - 1;
        s.fix_coordinate(u, 0);
      }
    }
    for (int j = i; j < k; ++j) {
      const int z = zchain[j];
      s.fix_coordinate(z, 1);
      Mask above = p.above(z);
      while (above) {
        int u = lowest_bit(above);
        above &= above - 1;
        s.fix_coordinate(u, 1);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace detail {

// Exact integer determinant, Bareiss fraction-free elimination.  Entries are
// small (TU candidates, facet normals), so int64 intermediates suffice.
inline long long int_det(std::vector<std::vector<long long>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  long long prev = 1;
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      sign = -sign;
    }
    for (int r = col + 1; r < n; ++r)
      for (int cc = col + 1; cc < n; ++cc)
        m[r][cc] = (m[r][cc] * m[col][col] - m[r][col] * m[col][cc]) / prev;
    prev = m[col][col];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace detail

inline constexpr int kDefaultMinorCap = 8;

/// True iff every square minor (up to the cap-bounded size) has determinant
/// in {0, +1, -1}.  Brute-force subset enumeration; exact Bareiss.
inline bool is_totally_unimodular(const std::vector<std::vector<long>>& M,
                                  int cap = kDefaultMinorCap) {
  const int r = static_cast<int>(M.size());
  const int c = r == 0 ? 0 : static_cast<int>(M[0].size());
  for (const auto& row : M)
    if (static_cast<int>(row.size()) != c) throw dimension_mismatch("ragged matrix");
  if (std::min(r, c) > cap)
    throw cap_exceeded("TU check needs min(rows,cols) <= cap; raise --cap-minor");
  const int kmax = std::min(r, c);
  std::vector<int> rows, cols;
  auto choose = [&](auto&& self, int k, int start, int need, bool picking_rows) -> bool {
    if (need == 0) {
      if (picking_rows) return self(self, k, 0, k, false);
      std::vector<std::vector<long long>> sub(k, std::vector<long long>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub[i][j] = M[rows[i]][cols[j]];
      const long long d = detail::int_det(sub);
      return d >= -1 && d <= 1;
    }
    const int limit = (picking_rows ? r : c) - need;
    for (int i = start; i <= limit; ++i) {
      (picking_rows ? rows : cols).push_back(i);
      const bool ok = self(self, k, i + 1, need - 1, picking_rows);
      (picking_rows ? rows : cols).pop_back();
      if (!ok) return false;
    }
    return true;
  };
  for (int k = 1; k <= kmax; ++k)
    if (!choose(choose, k, 0, k, true)) return false;
  return true;
}

/// Exact-rational point set spanning a polytope; pinned coordinates define
/// the axis-aligned affine hull.
struct VertexPolytope {
  int ambient = 0;
  std::vector<std::vector<Ratio>> verts;

  void dedupe() {
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  }

  /// Coordinates on which every listed point agrees.
  std::vector<int> fixed_coords() const {
    std::vector<int> out;
    if (verts.empty()) return out;
    for (int j = 0; j < ambient; ++j) {
      bool same = true;
      for (const auto& v : verts) same = same && v[j] == verts[0][j];
      if (same) out.push_back(j);
    }
    return out;
  }
};

inline constexpr int kDefaultVertexCap = 20;

/// Enumerates the 0/1 points of an order-polytope-derived system.  For TU
/// systems with integer bounds these are exactly the vertices.
inline VertexPolytope vertices(const ConstraintSystem& c, int cap = kDefaultVertexCap) {
  c.check();
  const auto free = c.free_coords();
  const int d = static_cast<int>(free.size());
  if (d > cap) throw cap_exceeded("vertex enumeration cap exceeded; raise --cap-n");
  VertexPolytope out;
  out.ambient = c.ambient;
  std::vector<Ratio> pt(c.ambient, Ratio(0));
  for (auto [j, val] : c.fixed) pt[j] = val;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << d); ++s) {
    for (int i = 0; i < d; ++i) pt[free[i]] = (s >> i) & 1 ? 1 : 0;
    bool ok = true;
    for (std::size_t r = 0; ok && r < c.A.size(); ++r) {
      long lhs = 0;
      for (int i = 0; i < d; ++i)
        if ((s >> i) & 1) lhs += c.A[r][free[i]];
      ok = lhs <= c.b[r];
    }
    if (ok) out.verts.push_back(pt);
  }
  out.dedupe();
  return out;
}

}  // namespace linext
