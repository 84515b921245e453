#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pdgeom/error.hpp"
#include "pdgeom/text.hpp"

namespace pdgeom {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A point (birth, death) strictly above the diagonal.
struct DiagramPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
  friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

inline bool is_valid_point(const DiagramPoint& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && a.x < a.y;
}

/// l-infinity distance in the plane. Also used for points that are not
/// diagram points (e.g. projections onto the diagonal).
inline double chebyshev(const DiagramPoint& a, const DiagramPoint& b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

/// l-infinity distance from a point to the diagonal {x = y}.
inline double diagonal_distance(const DiagramPoint& a) {
  return (a.y - a.x) / 2.0;
}

/// Finite persistence diagram in canonical form: points sorted
/// lexicographically, duplicates kept. Index i refers to points()[i].
class PersistenceDiagram {
 public:
  PersistenceDiagram() = default;

  explicit PersistenceDiagram(std::vector<DiagramPoint> points)
      : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const auto& p = points_[i];
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw input_error("diagram point " + std::to_string(i) +
                          " has a non-finite coordinate");
      }
      if (!(p.x < p.y)) {
        throw input_error("diagram point " + std::to_string(i) +
                          " does not satisfy birth < death");
      }
    }
    std::sort(points_.begin(), points_.end());
  }

  PersistenceDiagram(std::initializer_list<DiagramPoint> points)
      : PersistenceDiagram(std::vector<DiagramPoint>(points)) {}

  const std::vector<DiagramPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const DiagramPoint& operator[](std::size_t i) const { return points_[i]; }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  friend bool operator==(const PersistenceDiagram&,
                         const PersistenceDiagram&) = default;

 private:
  std::vector<DiagramPoint> points_;
};

/// Partial matching (I1', I2', f): left[k] in D1 is paired with right[k] in D2.
struct PartialMatching {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;

  std::size_t size() const noexcept { return left.size(); }
};

inline bool is_valid_order(double p) { return p >= 1.0; }  // false for NaN

inline void require_valid_order(double p) {
  if (!is_valid_order(p)) throw input_error("invalid order");
}

/// Checks that `m` is a bijection between index subsets of D1 and D2.
inline void validate_matching(const PersistenceDiagram& d1,
                              const PersistenceDiagram& d2,
                              const PartialMatching& m) {
  if (m.left.size() != m.right.size()) {
    throw input_error("matching sides have different sizes");
  }
  std::vector<char> used1(d1.size(), 0), used2(d2.size(), 0);
  for (std::size_t k = 0; k < m.size(); ++k) {
    const auto i = m.left[k];
    const auto j = m.right[k];
    if (i >= d1.size() || j >= d2.size()) {
      throw input_error("matching references missing index");
    }
    if (used1[i] || used2[j]) {
      throw input_error("matching is not injective");
    }
    used1[i] = used2[j] = 1;
  }
}

/// p-cost of a partial matching. p may be kInfinity. Unmatched points on
/// either side pay their distance to the diagonal.
inline double matching_cost(const PersistenceDiagram& d1,
                            const PersistenceDiagram& d2,
                            const PartialMatching& m, double p) {
  require_valid_order(p);
  validate_matching(d1, d2, m);

  std::vector<char> matched1(d1.size(), 0), matched2(d2.size(), 0);
  std::vector<double> terms;
  terms.reserve(d1.size() + d2.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    matched1[m.left[k]] = matched2[m.right[k]] = 1;
    terms.push_back(chebyshev(d1[m.left[k]], d2[m.right[k]]));
  }
  for (std::size_t i = 0; i < d1.size(); ++i) {
    if (!matched1[i]) terms.push_back(diagonal_distance(d1[i]));
  }
  for (std::size_t j = 0; j < d2.size(); ++j) {
    if (!matched2[j]) terms.push_back(diagonal_distance(d2[j]));
  }

  if (std::isinf(p)) {
    double worst = 0.0;
    for (double t : terms) worst = std::max(worst, t);
    return worst;
  }
  double sum = 0.0;
  for (double t : terms) sum += std::pow(t, p);
  return p == 1.0 ? sum : std::pow(sum, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Text format: one "birth death" pair per line, '#' starts a comment line.

inline PersistenceDiagram parse_diagram(std::istream& in) {
  std::vector<DiagramPoint> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    const auto fields = text::split_whitespace(body);
    if (fields.size() != 2) {
      throw input_error(where + "expected two numbers \"birth death\"");
    }
    const auto x = text::parse_double(fields[0]);
    const auto y = text::parse_double(fields[1]);
    if (!x || !y) throw input_error(where + "malformed number");
    if (!std::isfinite(*x) || !std::isfinite(*y)) {
      throw input_error(where + "non-finite coordinate");
    }
    if (!(*x < *y)) throw input_error(where + "birth must be less than death");
    points.push_back({*x, *y});
  }
  return PersistenceDiagram(std::move(points));
}

inline PersistenceDiagram parse_diagram(const std::string& contents) {
  std::istringstream in(contents);
  return parse_diagram(in);
}

inline PersistenceDiagram read_diagram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open diagram file: " + path);
  try {
    return parse_diagram(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

/// Writes the diagram so that parse_diagram reads back identical values.
inline void write_diagram(std::ostream& out, const PersistenceDiagram& d) {
  for (const auto& p : d) {
    out << text::format_exact(p.x) << ' ' << text::format_exact(p.y) << '\n';
  }
}

inline std::string format_diagram(const PersistenceDiagram& d) {
  std::ostringstream out;
  write_diagram(out, d);
  return out.str();
}

}  // namespace pdgeom
