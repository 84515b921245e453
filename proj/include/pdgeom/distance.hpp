#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pdgeom/assignment.hpp"
#include "pdgeom/bipartite_matching.hpp"
#include "pdgeom/diagram.hpp"

namespace pdgeom {

/// Optimal value together with one partial matching attaining it.
struct MatchingResult {
  double value = 0.0;
  PartialMatching matching;
};

/// Every value the bottleneck distance can take for this pair: pairwise
/// chebyshev distances, diagonal distances of both sides, and 0. Sorted,
/// without duplicates.
inline std::vector<double> bottleneck_candidates(const PersistenceDiagram& d1,
                                                 const PersistenceDiagram& d2) {
  std::vector<double> values;
  values.reserve(d1.size() * d2.size() + d1.size() + d2.size() + 1);
  values.push_back(0.0);
  for (const auto& a : d1) {
    values.push_back(diagonal_distance(a));
    for (const auto& b : d2) values.push_back(chebyshev(a, b));
  }
  for (const auto& b : d2) values.push_back(diagonal_distance(b));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

namespace detail {

// Diagonal-augmented threshold graph.
//   left  : D1 points [0, n1), diagonal slots of D2 points [n1, n1 + n2)
//   right : D2 points [0, n2), diagonal slots of D1 points [n2, n2 + n1)
inline std::vector<std::vector<std::size_t>> threshold_graph(
    const PersistenceDiagram& d1, const PersistenceDiagram& d2, double delta) {
  const std::size_t n1 = d1.size(), n2 = d2.size();
  std::vector<std::vector<std::size_t>> adj(n1 + n2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      if (chebyshev(d1[i], d2[j]) <= delta) adj[i].push_back(j);
    }
    if (diagonal_distance(d1[i]) <= delta) adj[i].push_back(n2 + i);
  }
  for (std::size_t j = 0; j < n2; ++j) {
    auto& row = adj[n1 + j];
    if (diagonal_distance(d2[j]) <= delta) row.push_back(j);
    for (std::size_t i = 0; i < n1; ++i) row.push_back(n2 + i);
  }
  return adj;
}

inline PartialMatching extract_matching(const HopcroftKarp& hk, std::size_t n1,
                                        std::size_t n2) {
  PartialMatching m;
  for (std::size_t i = 0; i < n1; ++i) {
    const auto j = hk.partner_of_left(i);
    if (j < n2) {
      m.left.push_back(i);
      m.right.push_back(j);
    }
  }
  return m;
}

}  // namespace detail

/// True if some partial matching has bottleneck cost <= delta.
inline bool bottleneck_feasible(const PersistenceDiagram& d1,
                                const PersistenceDiagram& d2, double delta) {
  const auto adj = detail::threshold_graph(d1, d2, delta);
  return HopcroftKarp(adj, d1.size() + d2.size()).is_perfect();
}

/// Exact bottleneck distance with an optimal matching. Binary search over
/// the candidate set, each step a perfect-matching test.
inline MatchingResult bottleneck_matching(const PersistenceDiagram& d1,
                                          const PersistenceDiagram& d2) {
  const auto candidates = bottleneck_candidates(d1, d2);
  // The largest candidate is always feasible: it dominates every edge.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (bottleneck_feasible(d1, d2, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const double delta = candidates[lo];
  const auto adj = detail::threshold_graph(d1, d2, delta);
  const HopcroftKarp hk(adj, d1.size() + d2.size());
  return {delta, detail::extract_matching(hk, d1.size(), d2.size())};
}

inline double bottleneck(const PersistenceDiagram& d1,
                         const PersistenceDiagram& d2) {
  return bottleneck_matching(d1, d2).value;
}

/// Exact p-Wasserstein distance (1 <= p < inf) with an optimal matching,
/// via min-cost assignment on the (n1 + n2) square augmented matrix.
/// p = inf is forwarded to the bottleneck solver.
inline MatchingResult wasserstein_matching(const PersistenceDiagram& d1,
                                           const PersistenceDiagram& d2,
                                           double p) {
  require_valid_order(p);
  if (std::isinf(p)) return bottleneck_matching(d1, d2);

  const std::size_t n1 = d1.size(), n2 = d2.size();
  CostMatrix cost(n1 + n2, kInfinity);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      cost(i, j) = std::pow(chebyshev(d1[i], d2[j]), p);
    }
    cost(i, n2 + i) = std::pow(diagonal_distance(d1[i]), p);
  }
  for (std::size_t j = 0; j < n2; ++j) {
    cost(n1 + j, j) = std::pow(diagonal_distance(d2[j]), p);
    for (std::size_t i = 0; i < n1; ++i) cost(n1 + j, n2 + i) = 0.0;
  }

  const auto assignment = solve_assignment(cost);
  PartialMatching m;
  for (std::size_t i = 0; i < n1; ++i) {
    if (assignment[i] < n2) {
      m.left.push_back(i);
      m.right.push_back(assignment[i]);
    }
  }
  const double value = matching_cost(d1, d2, m, p);
  return {value, std::move(m)};
}

inline double wasserstein(const PersistenceDiagram& d1,
                          const PersistenceDiagram& d2, double p) {
  return wasserstein_matching(d1, d2, p).value;
}

/// w_p for any p in [1, inf].
inline double diagram_distance(const PersistenceDiagram& d1,
                               const PersistenceDiagram& d2, double p) {
  require_valid_order(p);
  return std::isinf(p) ? bottleneck(d1, d2) : wasserstein(d1, d2, p);
}

/// w_inf(D, empty): the largest diagonal distance.
inline double bottleneck_norm(const PersistenceDiagram& d) {
  double norm = 0.0;
  for (const auto& a : d) norm = std::max(norm, diagonal_distance(a));
  return norm;
}

}  // namespace pdgeom
