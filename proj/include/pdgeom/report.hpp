#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "pdgeom/diagram.hpp"
#include "pdgeom/metric_space.hpp"
#include "pdgeom/negtype.hpp"
#include "pdgeom/text.hpp"

namespace pdgeom::report {

// Key order is insertion order so that reports diff cleanly.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr int kSignificantDigits = 12;

inline Json document(const std::string& operation) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["operation"] = operation;
  return j;
}

/// Reals are rounded to 12 significant digits; non-finite values become
/// null since JSON has no spelling for them.
inline Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return text::round_sig(v, kSignificantDigits);
}

inline Json numbers(const std::vector<double>& values) {
  Json arr = Json::array();
  for (double v : values) arr.push_back(number(v));
  return arr;
}

inline Json numbers(const Eigen::VectorXd& values) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) arr.push_back(number(values(i)));
  return arr;
}

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string inputs_digest(const FiniteMetricSpace& space) {
  std::ostringstream out;
  write_metric_space(out, space);
  return "fnv1a64:" + fnv1a_hex(out.str());
}

inline std::string inputs_digest(const std::vector<PersistenceDiagram>& diagrams) {
  std::string all;
  for (const auto& d : diagrams) all += format_diagram(d) + "--\n";
  return "fnv1a64:" + fnv1a_hex(all);
}

inline Json certificate(const NegTypeCertificate& cert, const std::string& digest,
                        double tol) {
  Json j;
  j["operation"] = "neg_type_holds";
  j["inputs_digest"] = digest;
  j["q"] = number(cert.q);
  j["verdict"] = cert.holds ? "holds" : "fails";
  j["extremal_eigenvalue"] = number(cert.max_eigenvalue);
  if (cert.witness) j["witness_vector"] = numbers(*cert.witness);
  j["tolerance"] = number(tol);
  return j;
}

inline Json psd_certificate(const PsdResult& r, const std::string& operation,
                            const std::string& digest, const char* parameter,
                            double value, double tol) {
  Json j;
  j["operation"] = operation;
  j["inputs_digest"] = digest;
  j[parameter] = number(value);
  j["verdict"] = r.psd ? "holds" : "fails";
  j["extremal_eigenvalue"] = number(r.min_eigenvalue);
  if (!r.psd) j["witness_vector"] = numbers(r.eigenvector);
  j["tolerance"] = number(tol);
  return j;
}

inline Json supremum(const NegTypeSupremum& s) {
  Json j;
  j["value"] = number(s.value);
  j["bound"] = s.at_least ? ">=" : "=";
  j["fails_at_zero"] = s.fails_at_zero;
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace pdgeom::report
