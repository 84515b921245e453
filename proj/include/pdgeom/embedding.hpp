#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdgeom/diagram.hpp"
#include "pdgeom/distance.hpp"
#include "pdgeom/error.hpp"
#include "pdgeom/metric_space.hpp"

namespace pdgeom {

/// Images of every point of a finite metric space under the shifted
/// Kuratowski map with scale c.
struct EmbeddingResult {
  FiniteMetricSpace source;
  double scale_c;
  std::vector<PersistenceDiagram> images;
};

/// Smallest "nice" admissible scale: 1 + diameter.
inline double auto_scale(const FiniteMetricSpace& space) {
  return 1.0 + space.max_distance();
}

/// Sends x to the diagram whose k-th point (k = 1..n) is
///   (2c(k-1), 2ck + d(x, x_k)).
/// For a metric space and c > diameter this is an isometry into diagram
/// space with the bottleneck distance, and every image has norm in
/// [c, 3c/2).
inline EmbeddingResult kuratowski_embed(const FiniteMetricSpace& space,
                                        std::optional<double> c = std::nullopt) {
  const double scale = c.value_or(auto_scale(space));
  if (!std::isfinite(scale) || !(scale > space.max_distance())) {
    throw hypothesis_error("scale violates hypothesis: c = " +
                           text::format_sig(scale) +
                           " must exceed the diameter " +
                           text::format_sig(space.max_distance()));
  }
  const std::size_t n = space.size();
  std::vector<PersistenceDiagram> images;
  images.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<DiagramPoint> points;
    points.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double birth = 2.0 * scale * static_cast<double>(k);
      const double death = 2.0 * scale * static_cast<double>(k + 1) + space(x, k);
      points.push_back({birth, death});
    }
    images.emplace_back(std::move(points));
  }
  return {space, scale, std::move(images)};
}

/// Pairwise bottleneck distances of a family of diagrams, as a semi-metric
/// space. Each pair is solved once and mirrored.
inline FiniteMetricSpace bottleneck_space(
    const std::vector<PersistenceDiagram>& diagrams,
    std::vector<std::string> labels = {}) {
  const std::size_t n = diagrams.size();
  if (labels.empty()) labels = FiniteMetricSpace::default_labels(n);
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[i * n + j] = dist[j * n + i] = bottleneck(diagrams[i], diagrams[j]);
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(dist));
}

struct IsometryReport {
  std::vector<double> residuals;  // row-major |w_inf(phi x, phi y) - d(x, y)|
  double max_residual = 0.0;
};

inline IsometryReport isometry_residuals(const EmbeddingResult& result) {
  const auto image_space = bottleneck_space(result.images);
  const std::size_t n = result.source.size();
  IsometryReport report;
  report.residuals.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double r = std::abs(image_space(i, j) - result.source(i, j));
      report.residuals[i * n + j] = r;
      report.max_residual = std::max(report.max_residual, r);
    }
  }
  return report;
}

struct AnnulusReport {
  double lower = 0.0;  // c
  double upper = 0.0;  // 3c/2, exclusive
  std::vector<double> norms;
  std::vector<bool> pass;
  bool all_pass = true;
};

/// Checks c <= w_inf(D, empty) < 3c/2 for every image.
inline AnnulusReport verify_annulus(const EmbeddingResult& result) {
  AnnulusReport report;
  report.lower = result.scale_c;
  report.upper = 1.5 * result.scale_c;
  for (const auto& image : result.images) {
    const double norm = bottleneck_norm(image);
    const bool ok = report.lower <= norm && norm < report.upper;
    report.norms.push_back(norm);
    report.pass.push_back(ok);
    report.all_pass = report.all_pass && ok;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Obstruction families.

/// Complete bipartite K_{n,n} as a metric space: distance 2 inside a part,
/// 1 across. Points a_1..a_n come first, then b_1..b_n.
inline FiniteMetricSpace build_knn(int n) {
  if (n < 2) throw input_error("K_{n,n} requires n >= 2");
  const std::size_t size = 2 * static_cast<std::size_t>(n);
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("a" + std::to_string(i));
  for (int i = 1; i <= n; ++i) labels.push_back("b" + std::to_string(i));
  std::vector<double> dist(size * size, 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (i == j) continue;
      const bool same_part = (i < size / 2) == (j < size / 2);
      dist[i * size + j] = same_part ? 2.0 : 1.0;
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(dist));
}

inline constexpr std::size_t kDefaultGridCap = 10000;

/// Distance in Z_n induced from |k - l| on the integers.
inline int cyclic_distance(int k, int l, int n) {
  const int diff = std::abs(k - l) % n;
  return std::min(diff, n - diff);
}

/// Z_n^m with the maximum of coordinatewise cyclic distances. Points are
/// enumerated in lexicographic order of their coordinate tuples.
inline FiniteMetricSpace build_torus_grid(int n, int m,
                                          std::size_t cap = kDefaultGridCap) {
  if (n < 1 || m < 1) throw input_error("torus grid requires n, m >= 1");
  std::size_t count = 1;
  for (int i = 0; i < m; ++i) {
    count *= static_cast<std::size_t>(n);
    if (count > cap) {
      throw limit_error("grid too large: Z_" + std::to_string(n) + "^" +
                        std::to_string(m) + " exceeds " + std::to_string(cap) +
                        " points");
    }
  }
  std::vector<std::vector<int>> coords(count, std::vector<int>(m));
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (int axis = m - 1; axis >= 0; --axis) {
      coords[idx][axis] = static_cast<int>(rest % n);
      rest /= n;
    }
  }
  std::vector<std::string> labels;
  labels.reserve(count);
  for (const auto& c : coords) {
    std::string s = "(";
    for (int axis = 0; axis < m; ++axis) {
      s += (axis ? "," : "") + std::to_string(c[axis]);
    }
    labels.push_back(s + ")");
  }
  std::vector<double> dist(count * count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      int d = 0;
      for (int axis = 0; axis < m; ++axis) {
        d = std::max(d, cyclic_distance(coords[i][axis], coords[j][axis], n));
      }
      dist[i * count + j] = d;
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(dist));
}

// ---------------------------------------------------------------------------
// Disjoint union of grids with separated Kuratowski images.

struct GridBlock {
  int n = 1;
  int m = 1;
  FiniteMetricSpace grid;
};

struct UnionSpace {
  std::vector<GridBlock> blocks;
  std::vector<double> constants;                       // c_i per block
  std::vector<std::vector<PersistenceDiagram>> images;  // per block, per point

  /// d~(x, y) = w_inf(phi(x), phi(y)) for x in block a, y in block b.
  double distance(std::size_t a, std::size_t x, std::size_t b,
                  std::size_t y) const {
    return bottleneck(images.at(a).at(x), images.at(b).at(y));
  }

  std::size_t point_count() const {
    std::size_t total = 0;
    for (const auto& b : blocks) total += b.grid.size();
    return total;
  }
};

/// Orders (n, m) pairs by n + m, then by n.
inline std::vector<std::pair<int, int>> order_grid_pairs(
    std::vector<std::pair<int, int>> pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const auto& l, const auto& r) {
    const int sl = l.first + l.second, sr = r.first + r.second;
    return sl != sr ? sl < sr : l.first < r.first;
  });
  return pairs;
}

/// c_i = 4 max(c_{i-1}, n_i + m_i), seeded by c = 1 for the block (1, 1).
/// A list that does not start at (1, 1) is treated as if (1, 1) preceded
/// it, so every c_i exceeds the diameter of its grid.
inline std::vector<double> union_constants(
    const std::vector<std::pair<int, int>>& ordered) {
  std::vector<double> c;
  c.reserve(ordered.size());
  double prev = 1.0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const auto [n, m] = ordered[i];
    if (i == 0 && n == 1 && m == 1) {
      c.push_back(1.0);
    } else {
      c.push_back(4.0 * std::max(prev, static_cast<double>(n + m)));
    }
    prev = c.back();
  }
  return c;
}

inline UnionSpace build_union_space(std::vector<std::pair<int, int>> pairs,
                                    std::size_t cap = kDefaultGridCap) {
  std::set<std::pair<int, int>> seen;
  for (const auto& p : pairs) {
    if (p.first < 1 || p.second < 1) {
      throw input_error("grid pair requires n, m >= 1");
    }
    if (!seen.insert(p).second) {
      throw input_error("duplicate grid pair (" + std::to_string(p.first) +
                        "," + std::to_string(p.second) + ")");
    }
  }
  const auto ordered = order_grid_pairs(std::move(pairs));
  UnionSpace u;
  u.constants = union_constants(ordered);
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const auto [n, m] = ordered[i];
    auto grid = build_torus_grid(n, m, cap);
    auto embedded = kuratowski_embed(grid, u.constants[i]);
    u.images.push_back(std::move(embedded.images));
    u.blocks.push_back({n, m, std::move(grid)});
  }
  return u;
}

struct UnionReport {
  bool isometric_blocks = true;   // condition (1)
  bool separated_blocks = true;   // condition (2)
  double max_block_residual = 0.0;
  // min over cross-block pairs of d~(x, y) - (n + m + n' + m'); empty when
  // there is only one block.
  std::optional<double> min_separation_margin;
  // min over cross-block pairs (i < j) of d~(x, y) - (c_j - 3 c_i / 2).
  std::optional<double> min_annulus_margin;
  std::size_t pairs_checked = 0;
};

inline constexpr double kIsometryTolerance = 1e-12;

/// Exhaustive check of both conditions over every pair of points.
inline UnionReport verify_union_conditions(const UnionSpace& u) {
  UnionReport r;
  const std::size_t blocks = u.blocks.size();
  for (std::size_t a = 0; a < blocks; ++a) {
    const auto& grid = u.blocks[a].grid;
    for (std::size_t x = 0; x < grid.size(); ++x) {
      for (std::size_t y = x + 1; y < grid.size(); ++y) {
        const double res = std::abs(u.distance(a, x, a, y) - grid(x, y));
        r.max_block_residual = std::max(r.max_block_residual, res);
        ++r.pairs_checked;
      }
    }
    for (std::size_t b = a + 1; b < blocks; ++b) {
      const double bound = u.blocks[a].n + u.blocks[a].m + u.blocks[b].n +
                           u.blocks[b].m;
      const double annulus_bound = u.constants[b] - 1.5 * u.constants[a];
      for (std::size_t x = 0; x < grid.size(); ++x) {
        for (std::size_t y = 0; y < u.blocks[b].grid.size(); ++y) {
          const double d = u.distance(a, x, b, y);
          const double margin = d - bound;
          const double annulus_margin = d - annulus_bound;
          r.min_separation_margin =
              std::min(r.min_separation_margin.value_or(margin), margin);
          r.min_annulus_margin = std::min(
              r.min_annulus_margin.value_or(annulus_margin), annulus_margin);
          ++r.pairs_checked;
        }
      }
    }
  }
  r.isometric_blocks = r.max_block_residual <= kIsometryTolerance;
  r.separated_blocks =
      !r.min_separation_margin || *r.min_separation_margin > 0.0;
  return r;
}

}  // namespace pdgeom
