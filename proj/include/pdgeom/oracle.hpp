#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "pdgeom/diagram.hpp"

namespace pdgeom {

inline constexpr std::size_t kDefaultOracleLimit = 8;

/// Minimum p-cost over every partial matching, by exhaustive enumeration.
/// Reference implementation of the definition; exponential, for checking
/// the exact solvers on small inputs only.
inline double brute_force_distance(const PersistenceDiagram& d1,
                                   const PersistenceDiagram& d2, double p,
                                   std::size_t limit = kDefaultOracleLimit) {
  require_valid_order(p);
  if (d1.size() + d2.size() > limit) {
    throw limit_error("oracle limit: " + std::to_string(d1.size()) + " + " +
                      std::to_string(d2.size()) + " points exceeds " +
                      std::to_string(limit));
  }

  // Each point of D1, in order, is either left unmatched or paired with a
  // still-free point of D2; this visits every partial matching exactly once.
  double best = kInfinity;
  PartialMatching current;
  std::vector<char> used(d2.size(), 0);
  auto visit = [&](auto&& self, std::size_t i) -> void {
    if (i == d1.size()) {
      best = std::min(best, matching_cost(d1, d2, current, p));
      return;
    }
    self(self, i + 1);
    for (std::size_t j = 0; j < d2.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      current.left.push_back(i);
      current.right.push_back(j);
      self(self, i + 1);
      current.left.pop_back();
      current.right.pop_back();
      used[j] = 0;
    }
  };
  visit(visit, 0);
  return best;
}

}  // namespace pdgeom
