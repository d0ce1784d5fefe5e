#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linext/errors.hpp"
#include "linext/poset.hpp"

namespace linext {

/// f maps elements to positions 1..n; u < v in P implies f(u) < f(v).
struct LinearExtension {
  std::vector<int> pos;  // pos[element], 1-based

  int operator()(int u) const { return pos[u]; }
  int element_at(int p) const {
    for (int u = 0; u < static_cast<int>(pos.size()); ++u)
      if (pos[u] == p) return u;
    return -1;
  }
};

inline constexpr int kEnumerationCap = 12;
inline constexpr std::size_t kNodeBudget = 5'000'000;

/// Yields every linear extension exactly once, ordered lexicographically by
/// the sequence f^{-1}(1), f^{-1}(2), ...
inline void enumerate(const Poset& p, const std::function<void(const LinearExtension&)>& visit,
                      int cap = kEnumerationCap) {
  const int n = p.size();
  if (n > cap)
    throw cap_exceeded("enumeration cap " + std::to_string(cap) + " exceeded by n=" +
                       std::to_string(n));
  LinearExtension f;
  f.pos.assign(n, 0);
  Mask placed = 0;
  std::function<void(int)> rec = [&](int next) {
    if (next > n) {
      visit(f);
      return;
    }
    for (int u = 0; u < n; ++u) {
      if (placed & bit(u)) continue;
      if (p.below(u) & ~placed) continue;  // some predecessor not yet placed
      placed |= bit(u);
      f.pos[u] = next;
      rec(next + 1);
      f.pos[u] = 0;
      placed &= ~bit(u);
    }
  };
  rec(1);
}

inline std::vector<LinearExtension> enumerate_all(const Poset& p, int cap = kEnumerationCap) {
  std::vector<LinearExtension> out;
  enumerate(p, [&](const LinearExtension& f) { out.push_back(f); }, cap);
  return out;
}

namespace detail {

// DP over the lattice of order ideals (downsets), layered by ideal size.
// pos_of[u] = required position of u (0 if free); elem_at[s] = element pinned
// at position s (-1 if free).
template <class Count>
Count count_fixed_core(const Poset& p, const std::vector<int>& pos_of,
                       const std::vector<int>& elem_at, std::size_t node_budget) {
  const int n = p.size();
  if (n == 0) return Count(1);
  std::unordered_map<Mask, Count> layer;
  layer.emplace(Mask{0}, Count(1));
  std::size_t nodes = 1;
  for (int s = 1; s <= n; ++s) {
    std::unordered_map<Mask, Count> next;
    const int forced = elem_at[s];
    for (const auto& [ideal, ways] : layer) {
      Mask candidates = p.all() & ~ideal;
      if (forced >= 0) candidates &= bit(forced);
      while (candidates) {
        const int u = lowest_bit(candidates);
        candidates &= candidates - 1;
        if (p.below(u) & ~ideal) continue;
        if (pos_of[u] != 0 && pos_of[u] != s) continue;
        auto [it, fresh] = next.try_emplace(ideal | bit(u), Count(0));
        it->second += ways;
        if (fresh && ++nodes > node_budget)
          throw cap_exceeded("order-ideal DP exceeded node budget");
      }
    }
    layer = std::move(next);
    if (layer.empty()) return Count(0);
  }
  return layer.begin()->second;
}

inline BigCount count_fixed_raw(const Poset& p, const std::vector<std::pair<int, int>>& fixes,
                                std::size_t node_budget = kNodeBudget) {
  const int n = p.size();
  std::vector<int> pos_of(n, 0), elem_at(n + 1, -1);
  for (auto [u, c] : fixes) {
    p.check_label(u);
    if (c < 1 || c > n) return 0;
    if ((pos_of[u] != 0 && pos_of[u] != c) || (elem_at[c] != -1 && elem_at[c] != u)) return 0;
    pos_of[u] = c;
    elem_at[c] = u;
  }
  if (n <= 20) {
    // n! fits in 64 bits up to n=20
    return BigCount(static_cast<unsigned long>(
        count_fixed_core<unsigned long long>(p, pos_of, elem_at, node_budget)));
  }
  return count_fixed_core<BigCount>(p, pos_of, elem_at, node_budget);
}

}  // namespace detail

/// e(P), exact, by DP over order ideals.
inline BigCount count(const Poset& p, std::size_t node_budget = kNodeBudget) {
  return detail::count_fixed_raw(p, {}, node_budget);
}

/// Number of linear extensions with the given (element, position) pins.
inline BigCount count_with_fixed(const Poset& p, const std::vector<std::pair<int, int>>& fixes,
                                 std::size_t node_budget = kNodeBudget) {
  return detail::count_fixed_raw(p, fixes, node_budget);
}

/// The argument tuple of N_{z,c}(P,x,a): fixed elements z_i at values c_i,
/// distinguished element x at value a.
struct CountInstance {
  Poset P;
  std::vector<std::pair<int, int>> zfixed;  // (z_i, c_i), c_1 < ... < c_k
  int x = 0;
  int a = 1;

  int k() const { return static_cast<int>(zfixed.size()); }

  void validate() const {
    const int n = P.size();
    P.check_label(x);
    std::vector<char> elem_seen(n, 0), val_seen(n + 1, 0);
    elem_seen[x] = 1;
    int prev = 0;
    for (auto [z, c] : zfixed) {
      P.check_label(z);
      if (elem_seen[z]) throw precondition_violated("repeated fixed element");
      elem_seen[z] = 1;
      if (c < 1 || c > n || c <= prev)
        throw precondition_violated("fixed values must be increasing in [n]");
      prev = c;
      val_seen[c] = 1;
    }
    if (a >= 1 && a <= n && val_seen[a])
      throw precondition_violated("a collides with a fixed value");
  }

  CountInstance with_a(int new_a) const {
    CountInstance inst = *this;
    inst.a = new_a;
    return inst;
  }
};

/// N_{z,c}(P,x,a); with drop_x set, N_{z,c}(P) of the k-only problem.
/// Out-of-range positions (a < 1 or a > n) count as 0.
inline BigCount count_fixed(const CountInstance& inst, bool drop_x = false,
                            std::size_t node_budget = kNodeBudget) {
  auto fixes = inst.zfixed;
  if (!drop_x) {
    if (inst.a < 1 || inst.a > inst.P.size()) return 0;
    fixes.emplace_back(inst.x, inst.a);
  }
  return detail::count_fixed_raw(inst.P, fixes, node_budget);
}

/// rho(P,x) = e(P)/e(P-x), exact.
inline Ratio rho(const Poset& p, int x) {
  p.check_label(x);
  Ratio r(count(p), count(p.without(x)));
  r.canonicalize();
  return r;
}

/// Defect of the Stanley inequality at a: N(a)^2 - N(a+1)*N(a-1).
/// Nonnegative by Stanley's theorem; a negative value is a hard error.
inline BigCount stanley_defect(const CountInstance& inst) {
  inst.validate();
  BigCount mid = count_fixed(inst);
  BigCount hi = count_fixed(inst.with_a(inst.a + 1));
  BigCount lo = count_fixed(inst.with_a(inst.a - 1));
  BigCount phi = mid * mid - hi * lo;
  if (phi < 0)
    throw internal_contradiction("negative Stanley defect: log-concavity violated");
  return phi;
}

/// True iff N_{z,c}(P,x,a) = N_{z,c}(P,x,a+1).
inline bool flat_check(const CountInstance& inst) {
  inst.validate();
  return count_fixed(inst) == count_fixed(inst.with_a(inst.a + 1));
}

namespace detail {

// Sound necessary conditions for a position-pinned extension to exist.  May
// only report "vanishing"; a pass is inconclusive.
inline bool filter_says_vanishing(const Poset& p, const std::vector<std::pair<int, int>>& fixes) {
  const int n = p.size();
  for (auto [u, c] : fixes) {
    if (c < 1 || c > n) return true;
    if (popcount(p.below(u)) + 1 > c) return true;           // |{w <= u}| <= c
    if (popcount(p.above(u)) + 1 > n - c + 1) return true;   // |{w >= u}| <= n-c+1
  }
  for (auto [u, c] : fixes)
    for (auto [v, d] : fixes) {
      if (u == v) continue;
      if (c == d) return true;
      if (c < d) {
        if (p.less(v, u)) return true;
        if (popcount(p.above(u) & p.below(v)) > d - c - 1) return true;
      }
    }
  return false;
}

}  // namespace detail

/// True iff N_{z,c}(P,x,a) = 0.  The interval filter is a sound fast path;
/// non-vanishing is always confirmed by the counting DP.
inline bool is_vanishing(const CountInstance& inst) {
  inst.validate();
  if (inst.a < 1 || inst.a > inst.P.size()) return true;
  auto fixes = inst.zfixed;
  fixes.emplace_back(inst.x, inst.a);
  if (detail::filter_says_vanishing(inst.P, fixes)) return true;
  return count_with_fixed(inst.P, fixes) == 0;
}

/// The two non-x elements among positions b-1, b, b+1 of f, given
/// f(x) in {b-1, b, b+1}.  Returned as (lower companion, upper companion).
inline std::pair<int, int> companions(const LinearExtension& f, int x, int b) {
  const int n = static_cast<int>(f.pos.size());
  const int fx = f.pos[x];
  if (fx < b - 1 || fx > b + 1)
    throw precondition_violated("f(x) must lie in {b-1, b, b+1}");
  int lc = -1, uc = -1;
  for (int u = 0; u < n; ++u) {
    if (u == x) continue;
    if (f.pos[u] >= b - 1 && f.pos[u] <= b + 1) {
      if (lc < 0)
        lc = u;
      else if (f.pos[u] < f.pos[lc]) {
        uc = lc;
        lc = u;
      } else {
        uc = u;
      }
    }
  }
  if (lc < 0 || uc < 0)
    throw precondition_violated("companions undefined at this position");
  return {lc, uc};
}

}  // namespace linext
