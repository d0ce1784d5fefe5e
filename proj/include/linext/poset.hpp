#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linext/errors.hpp"

namespace linext {

using Mask = std::uint64_t;

inline constexpr int kMaxElements = 64;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline int lowest_bit(Mask m) { return __builtin_ctzll(m); }
inline Mask bit(int i) { return Mask{1} << i; }
inline Mask full_mask(int n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// Immutable finite strict partial order on elements 0..n-1, stored as the
/// transitive closure.  `above(u)` is the bitmask of all v with u < v.
class Poset {
 public:
  Poset() = default;

  explicit Poset(int n) : n_(checked_size(n)), up_(n_, 0), down_(n_, 0) {}

  static Poset from_cover_relations(int n, const std::vector<std::pair<int, int>>& covers) {
    Poset p(n);
    for (auto [u, v] : covers) {
      p.check_label(u);
      p.check_label(v);
      p.add_relation(u, v);
    }
    return p;
  }

  static Poset chain(int n) {
    Poset p(n);
    for (int i = 0; i + 1 < n; ++i) p.add_relation(i, i + 1);
    return p;
  }

  static Poset antichain(int n) { return Poset(n); }

  int size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool less(int u, int v) const { return (up_[u] >> v) & 1; }
  bool comparable(int u, int v) const { return less(u, v) || less(v, u); }

  Mask above(int u) const { return up_[u]; }
  Mask below(int u) const { return down_[u]; }
  Mask all() const { return full_mask(n_); }

  /// Elements comparable to x, excluding x itself.
  Mask comparable_set(int x) const {
    check_label(x);
    return up_[x] | down_[x];
  }

  Mask minimals() const {
    Mask m = 0;
    for (int u = 0; u < n_; ++u)
      if (down_[u] == 0) m |= bit(u);
    return m;
  }

  Mask maximals() const {
    Mask m = 0;
    for (int u = 0; u < n_; ++u)
      if (up_[u] == 0) m |= bit(u);
    return m;
  }

  bool is_minimal(int u) const { return down_[u] == 0; }
  bool is_maximal(int u) const { return up_[u] == 0; }

  Poset dual() const {
    Poset p(n_);
    p.up_ = down_;
    p.down_ = up_;
    p.names_ = names_;
    return p;
  }

  /// Induced subposet on the elements of `keep`, relabeled compactly in
  /// increasing label order.  `map_out`, when given, receives old->new labels
  /// (-1 for dropped elements).
  Poset subposet(Mask keep, std::vector<int>* map_out = nullptr) const {
    if (keep & ~all()) throw label_out_of_range("subposet: labels exceed n");
    std::vector<int> map(n_, -1);
    int k = 0;
    for (int u = 0; u < n_; ++u)
      if (keep & bit(u)) map[u] = k++;
    Poset p(k);
    for (int u = 0; u < n_; ++u) {
      if (map[u] < 0) continue;
      Mask rest = up_[u] & keep;
      while (rest) {
        int v = lowest_bit(rest);
        rest &= rest - 1;
        p.up_[map[u]] |= bit(map[v]);
        p.down_[map[v]] |= bit(map[u]);
      }
    }
    if (map_out) *map_out = std::move(map);
    return p;
  }

  Poset without(int z, std::vector<int>* map_out = nullptr) const {
    check_label(z);
    return subposet(all() & ~bit(z), map_out);
  }

  friend Poset disjoint_sum(const Poset& p, const Poset& q) {
    Poset r = p.make_room_for(q);
    return r;
  }

  friend Poset linear_sum(const Poset& p, const Poset& q) {
    Poset r = p.make_room_for(q);
    for (int u = 0; u < p.n_; ++u)
      for (int v = 0; v < q.n_; ++v) {
        r.up_[u] |= bit(p.n_ + v);
        r.down_[p.n_ + v] |= bit(u);
      }
    return r;
  }

  /// Covers are recomputed from the closure: u covered-by v with nothing in
  /// between.
  std::vector<std::pair<int, int>> cover_relations() const {
    std::vector<std::pair<int, int>> covers;
    for (int u = 0; u < n_; ++u) {
      Mask rest = up_[u];
      while (rest) {
        int v = lowest_bit(rest);
        rest &= rest - 1;
        if ((up_[u] & down_[v]) == 0) covers.emplace_back(u, v);
      }
    }
    return covers;
  }

  int height() const {
    // longest chain cardinality, by DP over the closure DAG
    std::vector<int> h(n_, 0);
    std::vector<int> order = topological_order();
    int best = n_ > 0 ? 1 : 0;
    for (int u : order) {
      h[u] = 1;
      Mask rest = down_[u];
      while (rest) {
        int v = lowest_bit(rest);
        rest &= rest - 1;
        h[u] = std::max(h[u], h[v] + 1);
      }
      best = std::max(best, h[u]);
    }
    return best;
  }

  /// Dilworth width: minimum chain cover = n - max matching in the
  /// comparability bipartite graph.
  int width() const {
    if (n_ == 0) return 0;
    std::vector<int> match_right(n_, -1), match_left(n_, -1);
    int matched = 0;
    for (int u = 0; u < n_; ++u) {
      std::vector<char> seen(n_, 0);
      if (try_kuhn(u, seen, match_left, match_right)) ++matched;
    }
    return n_ - matched;
  }

  /// Exhaustive maximum-antichain search, for cross-checking width at small n.
  int width_bruteforce() const {
    int best = 0;
    for (Mask s = 0; s <= all(); ++s) {
      if (n_ == 64) break;  // not needed at brute-force scale
      bool anti = true;
      Mask rest = s;
      while (anti && rest) {
        int u = lowest_bit(rest);
        rest &= rest - 1;
        if ((up_[u] | down_[u]) & s) anti = false;
      }
      if (anti) best = std::max(best, popcount(s));
    }
    return best;
  }

  std::vector<int> topological_order() const {
    std::vector<int> order;
    order.reserve(n_);
    std::vector<int> indeg(n_);
    for (int u = 0; u < n_; ++u) indeg[u] = popcount(down_[u]);
    std::vector<int> stack;
    for (int u = 0; u < n_; ++u)
      if (indeg[u] == 0) stack.push_back(u);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      order.push_back(u);
      Mask rest = up_[u];
      while (rest) {
        int v = lowest_bit(rest);
        rest &= rest - 1;
        // closure edges: decrement per direct predecessor
        if (--indeg[v] == 0) stack.push_back(v);
      }
    }
    return order;
  }

  /// Asserts the three type invariants.  Used by tests on every constructed
  /// poset.
  bool validate() const {
    for (int u = 0; u < n_; ++u) {
      if (less(u, u)) return false;
      for (int v = 0; v < n_; ++v) {
        if (less(u, v) && less(v, u)) return false;
        if (less(u, v) && (up_[v] & ~up_[u]) != 0) return false;
        if (less(u, v) != ((down_[v] >> u) & 1)) return false;
      }
    }
    return true;
  }

  bool operator==(const Poset& o) const { return n_ == o.n_ && up_ == o.up_; }

  const std::optional<std::vector<std::string>>& names() const { return names_; }
  void set_names(std::vector<std::string> names) { names_ = std::move(names); }

  void check_label(int u) const {
    if (u < 0 || u >= n_)
      throw label_out_of_range("element label " + std::to_string(u) +
                               " out of range for n=" + std::to_string(n_));
  }

 private:
  static int checked_size(int n) {
    if (n < 0 || n > kMaxElements)
      throw cap_exceeded("poset size out of range [0,64]: " + std::to_string(n));
    return n;
  }

  // Adds u < v and restores transitive closure.
  void add_relation(int u, int v) {
    if (u == v || less(v, u))
      throw cycle_detected("relation " + std::to_string(u) + "<" + std::to_string(v) +
                           " closes a cycle");
    if (less(u, v)) return;
    Mask lo = down_[u] | bit(u);
    Mask hi = up_[v] | bit(v);
    Mask rest = lo;
    while (rest) {
      int a = lowest_bit(rest);
      rest &= rest - 1;
      up_[a] |= hi;
    }
    rest = hi;
    while (rest) {
      int b = lowest_bit(rest);
      rest &= rest - 1;
      down_[b] |= lo;
    }
  }

  Poset make_room_for(const Poset& q) const {
    if (n_ + q.n_ > kMaxElements)
      throw cap_exceeded("poset sum exceeds 64 elements");
    Poset r(n_ + q.n_);
    for (int u = 0; u < n_; ++u) {
      r.up_[u] = up_[u];
      r.down_[u] = down_[u];
    }
    for (int v = 0; v < q.n_; ++v) {
      r.up_[n_ + v] = q.up_[v] << n_;
      r.down_[n_ + v] = q.down_[v] << n_;
    }
    return r;
  }

  bool try_kuhn(int u, std::vector<char>& seen, std::vector<int>& match_left,
                std::vector<int>& match_right) const {
    Mask rest = up_[u];
    while (rest) {
      int v = lowest_bit(rest);
      rest &= rest - 1;
      if (seen[v]) continue;
      seen[v] = 1;
      if (match_right[v] < 0 || try_kuhn(match_right[v], seen, match_left, match_right)) {
        match_left[u] = v;
        match_right[v] = u;
        return true;
      }
    }
    return false;
  }

  int n_ = 0;
  std::vector<Mask> up_, down_;
  std::optional<std::vector<std::string>> names_;

  friend class PosetBuilder;
};

/// Mutable builder for gadget constructions that add relations incrementally.
class PosetBuilder {
 public:
  explicit PosetBuilder(int n) : p_(n) {}
  explicit PosetBuilder(const Poset& base, int extra) : p_(base.size() + extra) {
    for (int u = 0; u < base.size(); ++u) {
      p_.up_[u] = base.above(u);
      p_.down_[u] = base.below(u);
    }
  }

  void add(int u, int v) {
    p_.check_label(u);
    p_.check_label(v);
    p_.add_relation(u, v);
  }

  Poset build() { return std::move(p_); }

 private:
  Poset p_;
};

}  // namespace linext
