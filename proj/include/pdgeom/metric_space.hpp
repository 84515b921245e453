#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pdgeom/error.hpp"
#include "pdgeom/text.hpp"

namespace pdgeom {

/// Finite semi-metric space: labels plus a symmetric distance matrix with
/// zero diagonal. The triangle inequality is not required; use
/// check_metric() when it matters. Indices in messages are 0-based.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist)
      : labels_(std::move(labels)), dist_(std::move(dist)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw input_error("metric space must have at least one point");
    if (dist_.size() != n * n) {
      throw input_error("distance matrix has " + std::to_string(dist_.size()) +
                        " entries, expected " + std::to_string(n * n));
    }
    if (auto problem = semi_metric_violation()) throw input_error(*problem);
  }

  static FiniteMetricSpace from_rows(
      const std::vector<std::vector<double>>& rows,
      std::vector<std::string> labels = {}) {
    const std::size_t n = rows.size();
    if (labels.empty()) labels = default_labels(n);
    if (labels.size() != n) {
      throw input_error("expected " + std::to_string(n) + " labels, got " +
                        std::to_string(labels.size()));
    }
    std::vector<double> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) {
        throw input_error("row " + std::to_string(i) + " has " +
                          std::to_string(rows[i].size()) +
                          " entries, expected " + std::to_string(n));
      }
      flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    return FiniteMetricSpace(std::move(labels), std::move(flat));
  }

  static std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
    return out;
  }

  std::size_t size() const noexcept { return labels_.size(); }
  double operator()(std::size_t i, std::size_t j) const {
    return dist_[i * size() + j];
  }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<double>& row_major() const noexcept { return dist_; }

  double max_distance() const {
    double m = 0.0;
    for (double d : dist_) m = std::max(m, d);
    return m;
  }

  /// First violation of positivity or the triangle inequality, if any.
  /// `rel_tol` scales with the largest distance to absorb rounding in
  /// spaces produced by floating-point geometry.
  std::optional<std::string> check_metric(double rel_tol = 0.0) const {
    const std::size_t n = size();
    const double slack = rel_tol * max_distance();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if ((*this)(i, j) == 0.0) {
          return "distinct points at zero distance: (" + std::to_string(i) +
                 ", " + std::to_string(j) + ")";
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k) + slack) {
            return "triangle inequality fails: d(" + std::to_string(i) + ", " +
                   std::to_string(k) + ") > d(" + std::to_string(i) + ", " +
                   std::to_string(j) + ") + d(" + std::to_string(j) + ", " +
                   std::to_string(k) + ")";
          }
        }
      }
    }
    return std::nullopt;
  }

  void require_metric(double rel_tol = 0.0) const {
    if (auto problem = check_metric(rel_tol)) throw input_error(*problem);
  }

  FiniteMetricSpace subspace(const std::vector<std::size_t>& indices) const {
    std::vector<std::string> labels;
    std::vector<double> dist;
    for (auto i : indices) {
      if (i >= size()) throw input_error("subspace index out of range");
      labels.push_back(labels_[i]);
      for (auto j : indices) dist.push_back((*this)(i, j));
    }
    return FiniteMetricSpace(std::move(labels), std::move(dist));
  }

  friend bool operator==(const FiniteMetricSpace&,
                         const FiniteMetricSpace&) = default;

 private:
  std::optional<std::string> semi_metric_violation() const {
    const std::size_t n = size();
    auto at = [](std::size_t i, std::size_t j) {
      return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double d = (*this)(i, j);
        if (!std::isfinite(d)) return "entry " + at(i, j) + " is not finite";
        if (d < 0.0) return "entry " + at(i, j) + " is negative";
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if ((*this)(i, i) != 0.0) {
        return "diagonal entry " + at(i, i) + " is not zero";
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if ((*this)(i, j) != (*this)(j, i)) {
          return "entries " + at(i, j) + " and " + at(j, i) + " differ";
        }
      }
    }
    return std::nullopt;
  }

  std::vector<std::string> labels_;
  std::vector<double> dist_;
};

// ---------------------------------------------------------------------------
// CSV format: one row per line, optional first line of labels.

inline FiniteMetricSpace parse_metric_space(std::istream& in) {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = text::split(body, ',');
    std::vector<double> row;
    bool numeric = true;
    for (auto f : fields) {
      const auto v = text::parse_double(f);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (!first) {
        throw input_error("line " + std::to_string(line_no) +
                          ": malformed number");
      }
      for (auto f : fields) labels.emplace_back(text::trim(f));
    } else {
      rows.push_back(std::move(row));
    }
    first = false;
  }
  if (rows.empty()) throw input_error("metric space file has no rows");
  return FiniteMetricSpace::from_rows(rows, std::move(labels));
}

inline FiniteMetricSpace parse_metric_space(const std::string& contents) {
  std::istringstream in(contents);
  return parse_metric_space(in);
}

inline FiniteMetricSpace read_metric_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open metric space file: " + path);
  try {
    return parse_metric_space(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

inline void write_metric_space(std::ostream& out, const FiniteMetricSpace& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << (i ? "," : "") << x.label(i);
  }
  out << '\n';
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      out << (j ? "," : "") << text::format_exact(x(i, j));
    }
    out << '\n';
  }
}

}  // namespace pdgeom
