#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "linext/counting.hpp"
#include "linext/errors.hpp"
#include "linext/polytope.hpp"

namespace linext {

inline constexpr int kDefaultDimCap = 6;

namespace detail {

using IPoint = std::vector<long long>;

// Affine rank of a point set, by fraction-free elimination on differences.
inline int affine_rank(const std::vector<IPoint>& pts) {
  if (pts.empty()) return -1;
  const int d = static_cast<int>(pts[0].size());
  std::vector<IPoint> m;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    IPoint row(d);
    for (int j = 0; j < d; ++j) row[j] = pts[i][j] - pts[0][j];
    m.push_back(std::move(row));
  }
  int rank = 0;
  for (int col = 0; col < d && rank < static_cast<int>(m.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[rank]);
    for (int r = rank + 1; r < static_cast<int>(m.size()); ++r) {
      if (m[r][col] == 0) continue;
      const long long a = m[r][col], p = m[rank][col];
      for (int j = col; j < d; ++j) m[r][j] = m[r][j] * p - m[rank][j] * a;
    }
    ++rank;
  }
  return rank;
}

// Hyperplane through d affinely independent points: normal by cofactor
// expansion of the (d-1) x d difference matrix.
inline bool hyperplane_through(const std::vector<IPoint>& pts, const std::vector<int>& idx,
                               IPoint& normal, long long& rhs) {
  const int d = static_cast<int>(pts[0].size());
  std::vector<std::vector<long long>> diff(d - 1, std::vector<long long>(d));
  for (int i = 0; i + 1 < d; ++i)
    for (int j = 0; j < d; ++j) diff[i][j] = pts[idx[i + 1]][j] - pts[idx[0]][j];
  normal.assign(d, 0);
  bool nonzero = false;
  for (int j = 0; j < d; ++j) {
    std::vector<std::vector<long long>> minor(d - 1, std::vector<long long>(d - 1));
    for (int i = 0; i + 1 < d; ++i) {
      int cc = 0;
      for (int jj = 0; jj < d; ++jj)
        if (jj != j) minor[i][cc++] = diff[i][jj];
    }
    normal[j] = (j % 2 ? -1 : 1) * int_det(minor);
    nonzero = nonzero || normal[j] != 0;
  }
  if (!nonzero) return false;
  long long g = 0;
  for (long long v : normal) g = std::gcd(g, v < 0 ? -v : v);
  for (long long& v : normal) v /= g;
  rhs = 0;
  for (int j = 0; j < d; ++j) rhs += normal[j] * pts[idx[0]][j];
  return true;
}

// Exact d-volume of conv(pts) in Z^d by the facet-pyramid recursion:
// Vol = (1/d) * sum over facets of (b - a.p0) * Vol(projection) / |a_j|.
inline Ratio volume_rec(const std::vector<IPoint>& pts, int d) {
  if (pts.empty()) return Ratio(0);
  if (d == 0) return Ratio(1);
  if (d == 1) {
    long long lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return Ratio(static_cast<long>(hi - lo));
  }
  if (static_cast<int>(pts.size()) <= d) return Ratio(0);
  if (affine_rank(pts) < d) return Ratio(0);

  std::set<std::pair<IPoint, long long>> facets;
  std::vector<int> idx(d);
  const int n = static_cast<int>(pts.size());
  auto scan = [&](auto&& self, int pos, int start) -> void {
    if (pos == d) {
      IPoint a;
      long long b;
      if (!hyperplane_through(pts, idx, a, b)) return;
      int below = 0, above = 0;
      for (const auto& p : pts) {
        long long v = -b;
        for (int j = 0; j < d; ++j) v += a[j] * p[j];
        below += v < 0;
        above += v > 0;
      }
      if (below > 0 && above > 0) return;  // not supporting
      if (above > 0) {
        for (auto& v : a) v = -v;
        b = -b;
      }
      facets.emplace(std::move(a), b);
      return;
    }
    for (int i = start; i <= n - (d - pos); ++i) {
      idx[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  scan(scan, 0, 0);

  Ratio total(0);
  const IPoint& apex = pts[0];
  for (const auto& [a, b] : facets) {
    long long height = b;
    for (int j = 0; j < d; ++j) height -= a[j] * apex[j];
    if (height == 0) continue;  // facet through the apex
    int drop = 0;
    while (a[drop] == 0) ++drop;
    std::vector<IPoint> face;
    for (const auto& p : pts) {
      long long v = -b;
      for (int j = 0; j < d; ++j) v += a[j] * p[j];
      if (v != 0) continue;
      IPoint q;
      q.reserve(d - 1);
      for (int j = 0; j < d; ++j)
        if (j != drop) q.push_back(p[j]);
      face.push_back(std::move(q));
    }
    std::sort(face.begin(), face.end());
    face.erase(std::unique(face.begin(), face.end()), face.end());
    Ratio fv = volume_rec(face, d - 1);
    if (fv == 0) continue;
    const long long aj = a[drop] < 0 ? -a[drop] : a[drop];
    total += Ratio(static_cast<long>(height)) * fv / Ratio(static_cast<long>(aj));
  }
  total /= d;
  total.canonicalize();
  return total;
}

}  // namespace detail

struct VolumeResult {
  Ratio value;          // d-volume in the axis-aligned hull
  int dim = 0;          // d = number of non-constant coordinates
  bool degenerate = false;  // affine rank < d (value is then 0)
};

/// Exact intrinsic volume: constant coordinates are dropped (axis-aligned
/// affine hull), remaining points are scaled to integers, and the
/// facet-pyramid recursion runs in exact arithmetic.
inline VolumeResult volume(const VertexPolytope& vp, int dim_cap = kDefaultDimCap) {
  if (vp.verts.empty()) throw degenerate_input("volume of an empty point set");
  VertexPolytope v = vp;
  v.dedupe();
  const auto fixed = v.fixed_coords();
  std::vector<int> free;
  {
    std::vector<char> isfixed(v.ambient, 0);
    for (int j : fixed) isfixed[j] = 1;
    for (int j = 0; j < v.ambient; ++j)
      if (!isfixed[j]) free.push_back(j);
  }
  const int d = static_cast<int>(free.size());
  if (d > dim_cap) throw cap_exceeded("volume dimension cap exceeded; raise --cap-dim");
  VolumeResult res;
  res.dim = d;
  if (d == 0) {
    res.value = 1;
    return res;
  }
  BigCount scale = 1;
  for (const auto& pt : v.verts)
    for (int j : free) {
      BigCount den = pt[j].get_den();
      BigCount g;
      mpz_gcd(g.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
      scale = scale / g * den;
    }
  std::vector<detail::IPoint> pts;
  for (const auto& pt : v.verts) {
    detail::IPoint q;
    q.reserve(d);
    for (int j : free) {
      BigCount num = pt[j].get_num() * (scale / pt[j].get_den());
      if (!num.fits_slong_p()) throw cap_exceeded("volume: coordinates exceed machine range");
      q.push_back(num.get_si());
    }
    pts.push_back(std::move(q));
  }
  if (detail::affine_rank(pts) < d) {
    res.degenerate = true;
    res.value = 0;
    return res;
  }
  Ratio raw = detail::volume_rec(pts, d);
  Ratio s(scale);
  for (int i = 0; i < d; ++i) raw /= s;
  raw.canonicalize();
  res.value = raw;
  return res;
}

/// Candidate point set of sum_i w_i * P_i: all per-summand vertex sums.
/// Non-extreme candidates are harmless downstream.
inline VertexPolytope minkowski_combination(const std::vector<Ratio>& weights,
                                            const std::vector<VertexPolytope>& polys) {
  if (weights.size() != polys.size() || polys.empty())
    throw dimension_mismatch("minkowski_combination: weights/polys mismatch");
  const int amb = polys[0].ambient;
  for (const auto& p : polys) {
    if (p.ambient != amb) throw dimension_mismatch("minkowski_combination: ambient mismatch");
    if (p.verts.empty()) throw degenerate_input("minkowski_combination: empty summand");
  }
  for (const auto& w : weights)
    if (w <= 0) throw precondition_violated("minkowski_combination: weights must be positive");
  VertexPolytope out;
  out.ambient = amb;
  std::vector<Ratio> acc(amb, Ratio(0));
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == polys.size()) {
      out.verts.push_back(acc);
      return;
    }
    for (const auto& vtx : polys[i].verts) {
      for (int j = 0; j < amb; ++j) acc[j] += weights[i] * vtx[j];
      self(self, i + 1);
      for (int j = 0; j < amb; ++j) acc[j] -= weights[i] * vtx[j];
    }
  };
  rec(rec, 0);
  out.dedupe();
  return out;
}

namespace detail {

inline BigCount factorial(int n) {
  BigCount f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Solves the square rational system M x = y by Gaussian elimination.
inline std::vector<Ratio> solve_rational(std::vector<std::vector<Ratio>> M, std::vector<Ratio> y) {
  const int n = static_cast<int>(M.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (M[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw singular_interpolation("interpolation matrix singular");
    std::swap(M[pivot], M[col]);
    std::swap(y[pivot], y[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || M[r][col] == 0) continue;
      Ratio f = M[r][col] / M[col][col];
      for (int c = col; c < n; ++c) M[r][c] -= f * M[col][c];
      y[r] -= f * y[col];
    }
  }
  std::vector<Ratio> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = y[i] / M[i][i];
    x[i].canonicalize();
  }
  return x;
}

}  // namespace detail

/// Mixed volume V(Q_1[m_1], ..., Q_r[m_r]) with sum m_i = d: interpolates
/// the volume polynomial of the Minkowski combination on an integer grid and
/// extracts the requested monomial coefficient, normalized so that the
/// diagonal V(K,...,K) equals Vol(K).
inline Ratio mixed_volume(const std::vector<std::pair<VertexPolytope, int>>& entries,
                          int dim_cap = kDefaultDimCap) {
  std::vector<VertexPolytope> polys;
  std::vector<int> mult;
  int d = 0;
  for (const auto& [p, m] : entries) {
    if (m < 0) throw precondition_violated("mixed_volume: negative multiplicity");
    if (m == 0) continue;
    if (p.verts.empty()) return Ratio(0);
    polys.push_back(p);
    mult.push_back(m);
    d += m;
  }
  if (d == 0) return Ratio(1);
  if (d > dim_cap) throw cap_exceeded("mixed_volume dimension cap exceeded; raise --cap-dim");
  const int r = static_cast<int>(polys.size());
  if (r == 1) {
    VolumeResult v = volume(polys[0], dim_cap);
    if (v.dim > d)
      throw precondition_violated("mixed_volume: multiplicities do not match the dimension");
    return v.dim < d ? Ratio(0) : v.value;  // lower-dimensional body: d-volume 0
  }
  // Homogeneity: fix the last weight to 1 and interpolate the polynomial in
  // the remaining r-1 weights, degree <= d, on the tensor grid {1..d+1}^{r-1}.
  const int g = d + 1;
  std::vector<std::vector<int>> grid;
  std::vector<int> cur(r - 1, 1);
  for (;;) {
    grid.push_back(cur);
    int i = 0;
    while (i < r - 1 && cur[i] == g) cur[i++] = 1;
    if (i == r - 1) break;
    ++cur[i];
  }
  // monomial exponents beta over the first r-1 weights, each <= d per axis
  std::vector<std::vector<int>> monos;
  std::vector<int> mcur(r - 1, 0);
  for (;;) {
    monos.push_back(mcur);
    int i = 0;
    while (i < r - 1 && mcur[i] == d) mcur[i++] = 0;
    if (i == r - 1) break;
    ++mcur[i];
  }
  if (monos.size() != grid.size()) throw singular_interpolation("grid/monomial size mismatch");
  const int N = static_cast<int>(grid.size());
  std::vector<std::vector<Ratio>> M(N, std::vector<Ratio>(N));
  std::vector<Ratio> y(N);
  for (int i = 0; i < N; ++i) {
    std::vector<Ratio> w;
    for (int j = 0; j < r - 1; ++j) w.emplace_back(grid[i][j]);
    w.emplace_back(1);
    VertexPolytope sum = minkowski_combination(w, polys);
    VolumeResult v = volume(sum, dim_cap);
    if (v.dim > d)
      throw precondition_violated("mixed_volume: weighted sum exceeds the stated dimension");
    y[i] = v.dim < d || v.degenerate ? Ratio(0) : v.value;
    for (int t = 0; t < N; ++t) {
      Ratio term(1);
      for (int j = 0; j < r - 1; ++j)
        for (int e = 0; e < monos[t][j]; ++e) term *= grid[i][j];
      M[i][t] = term;
    }
  }
  const std::vector<Ratio> coeff = detail::solve_rational(std::move(M), std::move(y));
  int want = -1;
  for (int t = 0; t < N; ++t)
    if (std::equal(monos[t].begin(), monos[t].end(), mult.begin())) want = t;
  if (want < 0) throw internal_contradiction("requested monomial missing from basis");
  // Vol(sum w_i Q_i) = sum_alpha d!/(prod alpha_i!) V(Q[alpha]) w^alpha
  BigCount multinomial = detail::factorial(d);
  for (int mi : mult) multinomial /= detail::factorial(mi);
  Ratio out = coeff[want] / Ratio(multinomial);
  out.canonicalize();
  if (out < 0) throw internal_contradiction("negative mixed volume");
  return out;
}

/// Checks V(S_0^{c1-1}, S_1^{c2-c1-1}, ..., S_k^{n-ck}) = N_{z,c}(P)/(n-k)!.
struct StaPolResult {
  Ratio lhs, rhs;
  bool equal = false;
};

inline StaPolResult verify_sta_pol(const Poset& p, const std::vector<int>& zchain,
                                   const std::vector<int>& cvalues, int dim_cap = kDefaultDimCap) {
  const int n = p.size(), k = static_cast<int>(zchain.size());
  if (cvalues.size() != zchain.size())
    throw dimension_mismatch("verify_sta_pol: z/c length mismatch");
  for (int i = 0; i + 1 < k; ++i)
    if (cvalues[i] >= cvalues[i + 1])
      throw precondition_violated("verify_sta_pol: c values must increase");
  const auto sl = slices(p, zchain);
  std::vector<std::pair<VertexPolytope, int>> entries;
  for (int i = 0; i <= k; ++i) {
    const int lo = i == 0 ? 0 : cvalues[i - 1];
    const int hi = i == k ? n + 1 : cvalues[i];
    entries.emplace_back(vertices(sl[i]), hi - lo - 1);
  }
  StaPolResult res;
  bool any_empty = false;
  for (const auto& [vp, m] : entries) any_empty = any_empty || (m > 0 && vp.verts.empty());
  if (any_empty) {
    // an empty slice forces N = 0; the mixed volume is 0 by convention
    res.lhs = 0;
  } else {
    res.lhs = mixed_volume(entries, dim_cap);
  }
  CountInstance inst;
  inst.P = p;
  for (int i = 0; i < k; ++i) inst.zfixed.emplace_back(zchain[i], cvalues[i]);
  BigCount N = count_fixed(inst, /*drop_x=*/true);
  res.rhs = Ratio(N, detail::factorial(n - k));
  res.rhs.canonicalize();
  res.equal = res.lhs == res.rhs;
  return res;
}

/// Alexandrov-Fenchel defect delta = V(K,L,Q..)^2 - V(K,K,Q..) V(L,L,Q..).
inline Ratio af_defect(const VertexPolytope& K, const VertexPolytope& L,
                       const std::vector<std::pair<VertexPolytope, int>>& Qs,
                       int dim_cap = kDefaultDimCap) {
  auto with = [&](const VertexPolytope& a, const VertexPolytope& b) {
    std::vector<std::pair<VertexPolytope, int>> entries = Qs;
    // merge equal bodies so the distinct-body count stays minimal
    auto add = [&](const VertexPolytope& v) {
      for (auto& [p, m] : entries)
        if (p.ambient == v.ambient && p.verts == v.verts) {
          ++m;
          return;
        }
      entries.emplace_back(v, 1);
    };
    add(a);
    add(b);
    return mixed_volume(entries, dim_cap);
  };
  Ratio vkl = with(K, L), vkk = with(K, K), vll = with(L, L);
  Ratio delta = vkl * vkl - vkk * vll;
  delta.canonicalize();
  if (delta < 0) throw internal_contradiction("Alexandrov-Fenchel violated: negative defect");
  return delta;
}

}  // namespace linext
