#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "linext/poset.hpp"

namespace linext {

/// All labeled posets on [n], by extending each (n-1)-poset with element n-1:
/// choose a down-closed predecessor set D and an up-closed successor set U,
/// disjoint, with D x U already related.  Each poset arises exactly once from
/// its restriction.  Counts: 1, 3, 19, 219, 4231, 130023 for n = 1..6.
inline void for_all_posets(int n, const std::function<void(const Poset&)>& visit) {
  if (n > 7) throw cap_exceeded("labeled poset enumeration is for n <= 7");
  std::vector<Poset> layer{Poset(0)};
  for (int k = 0; k < n; ++k) {
    std::vector<Poset> next;
    for (const Poset& p : layer) {
      const Mask allk = full_mask(k);
      for (Mask d = 0;; ++d) {
        if ((d & allk) == d) {
          bool dclosed = true;
          Mask rest = d;
          while (dclosed && rest) {
            int u = lowest_bit(rest);
            rest &= rest - 1;
            dclosed = (p.below(u) & ~d) == 0;
          }
          if (dclosed) {
            for (Mask u = 0;; ++u) {
              if ((u & allk) == u && (u & d) == 0) {
                bool ok = true;
                Mask r2 = u;
                while (ok && r2) {
                  int w = lowest_bit(r2);
                  r2 &= r2 - 1;
                  ok = (p.above(w) & ~u) == 0;       // up-closed
                  ok = ok && (d & ~p.below(w)) == 0;  // D x U already related
                }
                if (ok) {
                  PosetBuilder b(p, 1);
                  Mask rd = d;
                  while (rd) {
                    int w = lowest_bit(rd);
                    rd &= rd - 1;
                    b.add(w, k);
                  }
                  Mask ru = u;
                  while (ru) {
                    int w = lowest_bit(ru);
                    ru &= ru - 1;
                    b.add(k, w);
                  }
                  next.push_back(b.build());
                }
              }
              if (u == allk) break;
            }
          }
        }
        if (d == allk) break;
      }
    }
    layer = std::move(next);
  }
  for (const Poset& p : layer) visit(p);
}

inline std::vector<Poset> all_posets(int n) {
  std::vector<Poset> out;
  for_all_posets(n, [&](const Poset& p) { out.push_back(p); });
  return out;
}

/// Canonical key: minimum over label permutations of the relation bitmatrix,
/// packed row-major into 64 bits (needs n <= 8).
inline std::uint64_t canonical_key(const Poset& p) {
  const int n = p.size();
  if (n > 8) throw cap_exceeded("canonical_key is for n <= 8");
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t key = 0;
    for (int u = 0; u < n; ++u) {
      Mask rest = p.above(u);
      while (rest) {
        const int v = lowest_bit(rest);
        rest &= rest - 1;
        key |= std::uint64_t{1} << (perm[u] * n + perm[v]);
      }
    }
    best = std::min(best, key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// One representative per isomorphism class.  Counts: 1, 2, 5, 16, 63, 318
/// for n = 1..6.
inline std::vector<Poset> unlabeled_posets(int n) {
  std::vector<std::pair<std::uint64_t, Poset>> reps;
  std::vector<std::uint64_t> seen;
  for_all_posets(n, [&](const Poset& p) {
    const std::uint64_t key = canonical_key(p);
    auto it = std::lower_bound(seen.begin(), seen.end(), key);
    if (it != seen.end() && *it == key) return;
    seen.insert(it, key);
    reps.emplace_back(key, p);
  });
  std::vector<Poset> out;
  out.reserve(reps.size());
  for (auto& [k, p] : reps) out.push_back(std::move(p));
  return out;
}

}  // namespace linext
