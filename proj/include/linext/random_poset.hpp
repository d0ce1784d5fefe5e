#pragma once

#include <random>

#include "linext/poset.hpp"

namespace linext {

/// Random poset: each label-increasing pair becomes a relation with
/// probability `density` (acyclic by construction), then closed.
/// density 0 gives the antichain, density 1 the chain on sorted labels.
inline Poset random_poset(int n, double density, std::uint64_t seed) {
  if (density < 0.0 || density > 1.0)
    throw precondition_violated("random_poset: density outside [0,1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> rels;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < density || density == 1.0) rels.emplace_back(u, v);
  return Poset::from_cover_relations(n, rels);
}

}  // namespace linext
