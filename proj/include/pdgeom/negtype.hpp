#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pdgeom/error.hpp"
#include "pdgeom/metric_space.hpp"

namespace pdgeom {

inline constexpr double kDefaultSpectralTolerance = 1e-9;

/// d^q with zero distances sent to zero for every q (so q = 0 gives the
/// indicator of distinct points).
inline double distance_power(double d, double q) {
  return d == 0.0 ? 0.0 : std::pow(d, q);
}

inline Eigen::MatrixXd distance_matrix(const FiniteMetricSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = space(i, j);
  }
  return m;
}

inline Eigen::MatrixXd power_matrix(const FiniteMetricSpace& space, double q) {
  return distance_matrix(space).unaryExpr(
      [q](double d) { return distance_power(d, q); });
}

/// sum_{i,j} a_i a_j d(x_i, x_j)^q, evaluated term by term.
inline double quadratic_form(const FiniteMetricSpace& space, double q,
                             const Eigen::VectorXd& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = 0; j < space.size(); ++j) {
      sum += a(i) * a(j) * distance_power(space(i, j), q);
    }
  }
  return sum;
}

namespace detail {

// Ascending eigenvalues of a symmetric matrix.
inline Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigensolve(
    const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver did not converge");
  }
  return solver;
}

inline Eigen::MatrixXd centering(Eigen::Index n) {
  return Eigen::MatrixXd::Identity(n, n) -
         Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
}

inline double relative_scale(const Eigen::MatrixXd& m) {
  const double s = static_cast<double>(m.rows()) * m.cwiseAbs().maxCoeff();
  return std::max(1.0, s);
}

}  // namespace detail

struct NegTypeCertificate {
  double q = 0.0;
  bool holds = true;
  double max_eigenvalue = 0.0;  // of the centered power matrix
  double threshold = 0.0;       // absolute cut-off actually applied
  std::optional<Eigen::VectorXd> witness;  // only when the test fails
  double witness_form = 0.0;               // quadratic form at the witness
};

/// Decides q-negative type through the spectrum of P M P, where
/// M_ij = d_ij^q and P projects onto mean-zero vectors. The largest
/// eigenvalue is the maximum of the form over unit mean-zero coefficients.
inline NegTypeCertificate neg_type_holds(
    const FiniteMetricSpace& space, double q,
    double tol = kDefaultSpectralTolerance) {
  if (!(q >= 0.0)) throw input_error("negative type exponent must be >= 0");
  if (!(tol > 0.0)) throw input_error("tolerance must be positive");

  const Eigen::MatrixXd m = power_matrix(space, q);
  const Eigen::MatrixXd p = detail::centering(m.rows());
  const Eigen::MatrixXd centered = p * m * p;
  const auto solver = detail::eigensolve(0.5 * (centered + centered.transpose()));

  NegTypeCertificate cert;
  cert.q = q;
  cert.max_eigenvalue = solver.eigenvalues()(m.rows() - 1);
  cert.threshold = tol * detail::relative_scale(m);
  cert.holds = cert.max_eigenvalue <= cert.threshold;
  if (!cert.holds) {
    Eigen::VectorXd v = solver.eigenvectors().col(m.rows() - 1);
    v.array() -= v.mean();
    v.normalize();
    // Deterministic sign: first nonzero entry positive.
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    cert.witness_form = quadratic_form(space, q, v);
    cert.witness = std::move(v);
  }
  return cert;
}

struct NegTypeSupremum {
  double value = 0.0;
  bool at_least = false;  // the test still held at q_max
  bool fails_at_zero = false;
};

inline constexpr double kDefaultQMax = 16.0;
inline constexpr int kDefaultBisectionSteps = 60;

/// Supremum of q in [0, q_max] with q-negative type, by bisection. The set
/// of such q is downward closed, so bisection is valid.
inline NegTypeSupremum neg_type_supremum(
    const FiniteMetricSpace& space, double q_max = kDefaultQMax,
    double tol = kDefaultSpectralTolerance,
    int steps = kDefaultBisectionSteps) {
  if (!(q_max > 0.0)) throw input_error("q_max must be positive");
  if (neg_type_holds(space, q_max, tol).holds) return {q_max, true, false};
  if (!neg_type_holds(space, 0.0, tol).holds) return {0.0, false, true};
  double lo = 0.0, hi = q_max;
  for (int i = 0; i < steps; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (neg_type_holds(space, mid, tol).holds) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), false, false};
}

// ---------------------------------------------------------------------------
// Generalized roundness.

struct RoundnessConfig {
  std::vector<std::size_t> a_points;
  std::vector<std::size_t> b_points;
};

struct EnfloResult {
  bool holds = true;
  double margin = 0.0;  // rhs - lhs
  double lhs = 0.0;     // sum_{i<j} d(a_i,a_j)^q + d(b_i,b_j)^q
  double rhs = 0.0;     // sum_{i,j} d(a_i,b_j)^q
};

/// Evaluates the roundness-q inequality for one configuration. The
/// tolerance is relative to the magnitude of the two sides.
inline EnfloResult enflo_check(const FiniteMetricSpace& host,
                               const RoundnessConfig& config, double q,
                               double tol = kDefaultSpectralTolerance) {
  const auto& a = config.a_points;
  const auto& b = config.b_points;
  if (a.empty() || a.size() != b.size()) {
    throw input_error("roundness configuration needs equal, nonempty lists");
  }
  for (auto i : a) {
    if (i >= host.size()) throw input_error("roundness index out of range");
  }
  for (auto i : b) {
    if (i >= host.size()) throw input_error("roundness index out of range");
  }
  if (!(q >= 0.0)) throw input_error("roundness exponent must be >= 0");

  EnfloResult r;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      r.lhs += distance_power(host(a[i], a[j]), q) +
               distance_power(host(b[i], b[j]), q);
    }
    for (std::size_t j = 0; j < n; ++j) {
      r.rhs += distance_power(host(a[i], b[j]), q);
    }
  }
  r.margin = r.rhs - r.lhs;
  r.holds = r.margin >= -tol * std::max(1.0, r.lhs + r.rhs);
  return r;
}

/// Largest q for which K_{n,n} satisfies the roundness inequality on its
/// canonical configuration: log2(1 + 1/(n-1)).
inline double knn_threshold(int n) {
  if (n < 2) throw input_error("K_{n,n} threshold requires n >= 2");
  return std::log2(1.0 + 1.0 / static_cast<double>(n - 1));
}

// ---------------------------------------------------------------------------
// Kernels.

struct PsdResult {
  bool psd = true;
  double min_eigenvalue = 0.0;
  Eigen::VectorXd eigenvector;  // for min_eigenvalue
};

inline Eigen::MatrixXd gaussian_gram(const FiniteMetricSpace& space, double t) {
  return distance_matrix(space).unaryExpr(
      [t](double d) { return std::exp(-t * d); });
}

/// Is exp(-t d) positive semidefinite on this sample? psd iff the smallest
/// eigenvalue is >= -tol * n.
inline PsdResult schoenberg_gaussian_psd(const FiniteMetricSpace& space,
                                         double t,
                                         double tol = kDefaultSpectralTolerance) {
  if (!(t > 0.0)) throw input_error("kernel parameter t must be positive");
  const auto solver = detail::eigensolve(gaussian_gram(space, t));
  PsdResult r;
  r.min_eigenvalue = solver.eigenvalues()(0);
  r.eigenvector = solver.eigenvectors().col(0);
  r.psd = r.min_eigenvalue >= -tol * static_cast<double>(space.size());
  return r;
}

/// 121 log-spaced values in [1e-3, 1e3] by default.
inline std::vector<double> log_grid(double lo = 1e-3, double hi = 1e3,
                                    int count = 121) {
  if (count < 2 || !(lo > 0.0) || !(hi > lo)) {
    throw input_error("invalid logarithmic grid");
  }
  std::vector<double> grid;
  grid.reserve(count);
  const double a = std::log10(lo), b = std::log10(hi);
  for (int k = 0; k < count; ++k) {
    grid.push_back(std::pow(10.0, a + (b - a) * k / (count - 1)));
  }
  return grid;
}

/// k(x, y) = d(x, x0) + d(y, x0) - d(x, y) for base point x0.
inline Eigen::MatrixXd centered_kernel(const FiniteMetricSpace& space,
                                       std::size_t base) {
  if (base >= space.size()) throw input_error("base index out of range");
  const auto n = static_cast<Eigen::Index>(space.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      k(i, j) = space(i, base) + space(j, base) - space(i, j);
    }
  }
  return k;
}

inline PsdResult schoenberg_centered_psd(const FiniteMetricSpace& space,
                                         std::size_t base,
                                         double tol = kDefaultSpectralTolerance) {
  const Eigen::MatrixXd k = centered_kernel(space, base);
  const auto solver = detail::eigensolve(k);
  PsdResult r;
  r.min_eigenvalue = solver.eigenvalues()(0);
  r.eigenvector = solver.eigenvectors().col(0);
  r.psd = r.min_eigenvalue >= -tol * detail::relative_scale(k);
  return r;
}

/// Feature-space distances from a Gram matrix:
///   d'(i, j) = sqrt(G_ii + G_jj - 2 G_ij).
inline Eigen::MatrixXd kernel_distance_matrix(
    const Eigen::MatrixXd& gram, double tol = kDefaultSpectralTolerance) {
  if (gram.rows() != gram.cols()) throw input_error("Gram matrix is not square");
  const double scale = gram.size() ? detail::relative_scale(gram) : 1.0;
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw input_error("not a kernel: Gram matrix is not symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (gram + gram.transpose());
  if (gram.size() && detail::eigensolve(sym).eigenvalues()(0) < -tol * scale) {
    throw input_error("not a kernel: Gram matrix is not positive semidefinite");
  }
  const auto n = sym.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) =
          std::sqrt(std::max(0.0, sym(i, i) + sym(j, j) - 2.0 * sym(i, j)));
    }
  }
  return d;
}

/// Replaces d by d^(q/2). The result has 2-negative type exactly when the
/// input has q-negative type.
inline FiniteMetricSpace snowflake(const FiniteMetricSpace& space, double q) {
  if (!(q > 0.0)) throw input_error("snowflake exponent must be positive");
  std::vector<double> dist = space.row_major();
  for (double& d : dist) d = distance_power(d, q / 2.0);
  return FiniteMetricSpace(space.labels(), std::move(dist));
}

// ---------------------------------------------------------------------------
// Empirical distortion envelopes.

struct EnvelopePoint {
  double input_distance = 0.0;
  double output_distance = 0.0;
};

/// Tightest rho_-, rho_+ values at one sampled input distance.
struct EnvelopeRow {
  double input_distance = 0.0;
  double rho_minus = 0.0;  // min output distance
  double rho_plus = 0.0;   // max output distance
  std::size_t pairs = 0;
};

struct DistortionEnvelope {
  std::vector<EnvelopePoint> points;  // one per unordered pair i < j
  std::vector<EnvelopeRow> rows;      // ascending input distance
  double max_output = 0.0;
  // rho_minus at the largest sampled input distance exceeds rho_minus at
  // the smallest positive one.
  bool lower_envelope_grows = false;
  std::string note;
};

inline DistortionEnvelope distortion_envelope(
    const FiniteMetricSpace& space, const Eigen::MatrixXd& gram,
    double tol = kDefaultSpectralTolerance) {
  if (gram.rows() != static_cast<Eigen::Index>(space.size()) ||
      gram.cols() != gram.rows()) {
    throw input_error("dimension mismatch between space and Gram matrix");
  }
  const Eigen::MatrixXd out = kernel_distance_matrix(gram, tol);
  DistortionEnvelope env;
  std::map<double, EnvelopeRow> by_input;
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      const EnvelopePoint p{space(i, j), out(i, j)};
      env.points.push_back(p);
      env.max_output = std::max(env.max_output, p.output_distance);
      auto [it, inserted] = by_input.try_emplace(p.input_distance);
      auto& row = it->second;
      if (inserted) {
        row = {p.input_distance, p.output_distance, p.output_distance, 0};
      }
      row.rho_minus = std::min(row.rho_minus, p.output_distance);
      row.rho_plus = std::max(row.rho_plus, p.output_distance);
      ++row.pairs;
    }
  }
  for (const auto& [d, row] : by_input) env.rows.push_back(row);

  std::vector<const EnvelopeRow*> positive;
  for (const auto& row : env.rows) {
    if (row.input_distance > 0.0) positive.push_back(&row);
  }
  if (positive.size() >= 2) {
    env.lower_envelope_grows =
        positive.back()->rho_minus > positive.front()->rho_minus;
  }
  if (env.max_output == 0.0) {
    env.note = "rho_minus cannot tend to infinity on this sample";
  } else if (!env.lower_envelope_grows) {
    env.note = "rho_minus does not grow across the sampled distances";
  }
  return env;
}

}  // namespace pdgeom
