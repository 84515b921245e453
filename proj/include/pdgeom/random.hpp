#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pdgeom/diagram.hpp"
#include "pdgeom/metric_space.hpp"

namespace pdgeom {

using Rng = std::mt19937_64;

/// Up to `max_points` points with births in [lo, hi) and positive
/// persistence, deaths capped at hi.
inline PersistenceDiagram random_diagram(Rng& rng, std::size_t max_points,
                                         double lo = 0.0, double hi = 10.0) {
  std::uniform_int_distribution<std::size_t> count(0, max_points);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = count(rng);
  std::vector<DiagramPoint> points;
  points.reserve(n);
  while (points.size() < n) {
    const double x = lo + (hi - lo) * unit(rng);
    const double y = x + (hi - x) * unit(rng);
    if (x < y) points.push_back({x, y});
  }
  return PersistenceDiagram(std::move(points));
}

/// Random finite metric space with `n` points and all distances in (0, 1].
/// Alternates between two families: points of the unit cube in
/// R^dim under the Euclidean metric rescaled to diameter 1, and symmetric
/// matrices with entries in [1/2, 1] (any such matrix is a metric).
inline FiniteMetricSpace random_metric_space(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> dist(n * n, 0.0);
  if (std::bernoulli_distribution(0.5)(rng)) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        dist[i * n + j] = dist[j * n + i] = 0.5 + 0.5 * unit(rng);
      }
    }
  } else {
    const std::size_t dim = 1 + rng() % 4;
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (auto& p : pts) {
      for (auto& c : p) c = unit(rng);
    }
    double diameter = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
          s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
        }
        dist[i * n + j] = dist[j * n + i] = std::sqrt(s);
        diameter = std::max(diameter, std::sqrt(s));
      }
    }
    for (auto& d : dist) d = diameter > 0.0 ? d / diameter : d;
    // Coincident points would break positivity; nudge them apart.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && dist[i * n + j] == 0.0) dist[i * n + j] = 1e-9;
      }
    }
  }
  return FiniteMetricSpace(FiniteMetricSpace::default_labels(n), std::move(dist));
}

}  // namespace pdgeom
