#pragma once

// Independent brute-force reference implementations for the test suite.
// Deliberately avoids the library's DP and bitmask machinery: plain adjacency
// checks and backtracking over positions.

#include <utility>
#include <vector>

#include <gmpxx.h>

#include "linext/poset.hpp"

namespace oracle {

// All linear extensions by backtracking; visit(pos) with pos[u] = position.
template <class Visit>
void for_each_extension(const linext::Poset& p, Visit&& visit) {
  const int n = p.size();
  std::vector<int> pos(n, 0);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int next) -> void {
    if (next > n) {
      visit(pos);
      return;
    }
    for (int u = 0; u < n; ++u) {
      if (used[u]) continue;
      bool ready = true;
      for (int w = 0; w < n && ready; ++w)
        if (p.less(w, u) && !used[w]) ready = false;
      if (!ready) continue;
      used[u] = true;
      pos[u] = next;
      self(self, next + 1);
      used[u] = false;
      pos[u] = 0;
    }
  };
  rec(rec, 1);
}

inline mpz_class count(const linext::Poset& p) {
  mpz_class total = 0;
  for_each_extension(p, [&](const std::vector<int>&) { total += 1; });
  return total;
}

inline mpz_class count_fixed(const linext::Poset& p,
                             const std::vector<std::pair<int, int>>& fixes) {
  mpz_class total = 0;
  for_each_extension(p, [&](const std::vector<int>& pos) {
    for (auto [u, c] : fixes)
      if (c < 1 || c > static_cast<int>(pos.size()) || pos[u] != c) return;
    total += 1;
  });
  return total;
}

inline mpq_class rho(const linext::Poset& p, int x) {
  mpq_class r(oracle::count(p), oracle::count(p.without(x)));
  r.canonicalize();
  return r;
}

}  // namespace oracle
