#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdgeom/pdgeom.hpp"

namespace pdgeom::cli {

namespace fs = std::filesystem;
using report::Json;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInput = 2,
  kLimit = 3,
  kHypothesis = 4,
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input:
      return kInput;
    case ErrorKind::resource_limit:
      return kLimit;
    case ErrorKind::hypothesis:
      return kHypothesis;
  }
  return kInternal;
}

struct GlobalOptions {
  double tol = kDefaultSpectralTolerance;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string out;
  bool json = false;
};

/// Where a metric space comes from: a CSV file or one builtin family.
struct SpaceSource {
  std::string file;
  int knn = 0;
  std::vector<int> torus;
  bool three_point = false;
  bool line = false;
  int random = 0;

  void add_to(CLI::App* cmd, bool with_file = true) {
    if (with_file) cmd->add_option("space", file, "metric space CSV file");
    cmd->add_option("--knn", knn, "builtin K_{n,n}")->check(CLI::PositiveNumber);
    cmd->add_option("--torus", torus, "builtin grid Z_n^m")->expected(2);
    cmd->add_flag("--three-point", three_point, "builtin 3-point space 0.3, 0.5, 0.8");
    cmd->add_flag("--line", line, "builtin points 0, 1, 2 on a line");
    cmd->add_option("--random", random, "random metric space with N points (needs --seed)")
        ->check(CLI::PositiveNumber);
  }
};

inline FiniteMetricSpace three_point_space() {
  return FiniteMetricSpace::from_rows({{0, 0.3, 0.8}, {0.3, 0, 0.5}, {0.8, 0.5, 0}},
                                      {"x1", "x2", "x3"});
}

inline FiniteMetricSpace line3_space() {
  return FiniteMetricSpace::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {"p0", "p1", "p2"});
}

inline Rng seeded_rng(const GlobalOptions& g, const char* what) {
  if (!g.has_seed) throw input_error(std::string(what) + " requires --seed");
  return Rng(g.seed);
}

struct ResolvedSpace {
  FiniteMetricSpace space;
  std::string description;
  int knn = 0;  // nonzero for the K_{n,n} builtin
};

inline ResolvedSpace resolve_space(const SpaceSource& s, const GlobalOptions& g) {
  const int chosen = !s.file.empty() + (s.knn > 0) + !s.torus.empty() + s.three_point +
                     s.line + (s.random > 0);
  if (chosen != 1) {
    throw input_error(
        "give exactly one of: a space file, --knn, --torus, --three-point, --line, --random");
  }
  if (!s.file.empty()) return {read_metric_space_file(s.file), s.file, 0};
  if (s.knn > 0) {
    return {build_knn(s.knn), "K_{" + std::to_string(s.knn) + "," + std::to_string(s.knn) + "}",
            s.knn};
  }
  if (!s.torus.empty()) {
    return {build_torus_grid(s.torus[0], s.torus[1]),
            "Z_" + std::to_string(s.torus[0]) + "^" + std::to_string(s.torus[1]), 0};
  }
  if (s.three_point) return {three_point_space(), "three_point", 0};
  if (s.line) return {line3_space(), "line3", 0};
  auto rng = seeded_rng(g, "--random");
  return {random_metric_space(rng, static_cast<std::size_t>(s.random)),
          "random(" + std::to_string(s.random) + ", seed " + std::to_string(g.seed) + ")", 0};
}

inline std::string num(double v) { return text::format_sig(v, report::kSignificantDigits); }

inline void write_text_file(const fs::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw input_error("cannot write " + path.string());
  f << contents;
  if (!f) throw input_error("cannot write " + path.string());
}

/// Prints the report as JSON when asked to, and also writes it to --out for
/// commands where --out names the report file.
inline void emit_json(const Json& j, const GlobalOptions& g, std::ostream& out,
                      bool out_is_report) {
  const auto text = report::dump(j);
  if (g.json) out << text;
  if (out_is_report && !g.out.empty()) write_text_file(g.out, text);
}

// ---------------------------------------------------------------------------

struct DistArgs {
  std::string a, b;
  std::string p = "inf";
  bool oracle = false;
  int random = 0;
};

inline int cmd_dist(const DistArgs& args, const GlobalOptions& g, std::ostream& out) {
  const auto p = text::parse_double(args.p);
  if (!p) throw input_error("invalid order: " + args.p);
  require_valid_order(*p);

  PersistenceDiagram d1, d2;
  if (args.random > 0) {
    if (!args.a.empty()) throw input_error("--random replaces the diagram files");
    auto rng = seeded_rng(g, "--random");
    d1 = random_diagram(rng, static_cast<std::size_t>(args.random));
    d2 = random_diagram(rng, static_cast<std::size_t>(args.random));
  } else {
    if (args.a.empty() || args.b.empty()) throw input_error("dist needs two diagram files");
    d1 = read_diagram_file(args.a);
    d2 = read_diagram_file(args.b);
  }

  const double value = diagram_distance(d1, d2, *p);
  std::optional<double> oracle;
  if (args.oracle) oracle = brute_force_distance(d1, d2, *p);
  const bool agrees = !oracle || std::abs(*oracle - value) <= 1e-12;

  Json j = report::document("dist");
  j["inputs_digest"] = report::inputs_digest(std::vector{d1, d2});
  j["p"] = std::isinf(*p) ? Json("inf") : report::number(*p);
  j["sizes"] = {d1.size(), d2.size()};
  j["value"] = report::number(value);
  if (oracle) {
    j["oracle"] = {{"value", report::number(*oracle)},
                   {"verdict", agrees ? "agrees" : "disagrees"}};
  }
  if (!g.json) {
    out << "p        " << (std::isinf(*p) ? std::string("inf") : num(*p)) << '\n';
    out << "distance " << num(value) << '\n';
    if (oracle) {
      out << "oracle   " << num(*oracle) << (agrees ? " (agrees)" : " (DISAGREES)") << '\n';
    }
  }
  emit_json(j, g, out, true);
  return kOk;
}

// ---------------------------------------------------------------------------

struct EmbedArgs {
  SpaceSource source;
  std::optional<double> c;
};

inline int cmd_embed(const EmbedArgs& args, const GlobalOptions& g, std::ostream& out) {
  const auto resolved = resolve_space(args.source, g);
  const auto& x = resolved.space;
  const auto result = kuratowski_embed(x, args.c);
  const auto iso = isometry_residuals(result);
  const auto annulus = verify_annulus(result);
  const bool isometric = iso.max_residual <= kIsometryTolerance;
  const auto metric_violation = x.check_metric();

  Json j = report::document("embed");
  j["inputs_digest"] = report::inputs_digest(x);
  j["source"] = resolved.description;
  j["points"] = x.size();
  j["c"] = report::number(result.scale_c);
  j["max_residual"] = report::number(iso.max_residual);
  j["residuals"] = report::numbers(iso.residuals);
  j["isometry"] = isometric ? "pass" : "fail";
  if (metric_violation) j["metric_violation"] = *metric_violation;
  j["annulus"] = {{"lower", report::number(annulus.lower)},
                  {"upper", report::number(annulus.upper)},
                  {"norms", report::numbers(annulus.norms)},
                  {"verdict", annulus.all_pass ? "pass" : "fail"}};
  j["verdict"] = isometric && annulus.all_pass ? "pass" : "fail";

  if (!g.out.empty()) {
    const fs::path dir(g.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw input_error("cannot create " + dir.string() + ": " + ec.message());
    Json files = Json::array();
    for (std::size_t i = 0; i < result.images.size(); ++i) {
      const auto name = "point_" + std::to_string(i + 1) + ".dgm";
      write_text_file(dir / name, "# " + x.label(i) + "\n" + format_diagram(result.images[i]));
      files.push_back(name);
    }
    j["files"] = files;
    write_text_file(dir / "report.json", report::dump(j));
  }

  if (g.json) {
    out << report::dump(j);
  } else {
    out << "source        " << resolved.description << " (" << x.size() << " points)\n";
    out << "c             " << num(result.scale_c) << '\n';
    out << "max residual  " << num(iso.max_residual) << (isometric ? " (pass)" : " (fail)")
        << '\n';
    if (metric_violation) out << "note          " << *metric_violation << '\n';
    out << "annulus       [" << num(annulus.lower) << ", " << num(annulus.upper) << ")\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
      out << "  " << std::left << std::setw(12) << x.label(i) << std::right << num(annulus.norms[i])
          << (annulus.pass[i] ? "  pass" : "  FAIL") << '\n';
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct CertifyArgs {
  SpaceSource source;
  double qmax = kDefaultQMax;
  std::vector<double> qs;
};

inline int cmd_certify(const CertifyArgs& args, const GlobalOptions& g, std::ostream& out) {
  const auto resolved = resolve_space(args.source, g);
  const auto& x = resolved.space;
  const auto digest = report::inputs_digest(x);
  const auto sup = neg_type_supremum(x, args.qmax, g.tol);

  Json j = report::document("certify");
  j["inputs_digest"] = digest;
  j["source"] = resolved.description;
  j["points"] = x.size();
  j["tolerance"] = report::number(g.tol);
  j["supremum"] = report::supremum(sup);
  std::optional<double> closed;
  if (resolved.knn > 0) {
    closed = knn_threshold(resolved.knn);
    const double diff = std::abs(sup.value - *closed);
    j["closed_form"] = {{"n", resolved.knn},
                        {"threshold", report::number(*closed)},
                        {"difference", report::number(diff)},
                        {"verdict", diff <= 1e-6 ? "matches" : "differs"}};
  }
  Json certs = Json::array();
  std::vector<NegTypeCertificate> results;
  for (double q : args.qs) {
    results.push_back(neg_type_holds(x, q, g.tol));
    certs.push_back(report::certificate(results.back(), digest, g.tol));
  }
  j["certificates"] = certs;

  if (!g.json) {
    out << "source       " << resolved.description << " (" << x.size() << " points)\n";
    out << "supremum     " << (sup.at_least ? ">= " : "") << num(sup.value)
        << (sup.fails_at_zero ? " (fails already at q = 0)" : "") << '\n';
    if (closed) {
      out << "closed form  " << num(*closed) << " (difference "
          << num(std::abs(sup.value - *closed)) << ")\n";
    }
    for (const auto& c : results) {
      out << "q = " << num(c.q) << ": " << (c.holds ? "holds" : "fails")
          << " (max eigenvalue " << num(c.max_eigenvalue) << ")\n";
    }
  }
  emit_json(j, g, out, true);
  return kOk;
}

// ---------------------------------------------------------------------------

struct ProbeArgs {
  std::string directory;
  SpaceSource builtin;
  double t_min = 1e-3;
  double t_max = 1e3;
  int t_count = 121;
};

struct ProbeResult {
  bool witness = false;
  double min_eigenvalue = 0.0;
  double t = 0.0;
  Eigen::VectorXd eigenvector;
  std::vector<std::pair<double, double>> scan;  // (t, min eigenvalue)
};

/// Scans exp(-t w_inf) over a log grid of t for a non-psd Gram matrix.
inline ProbeResult probe_gaussian(const FiniteMetricSpace& bottleneck_distances,
                                  const std::vector<double>& grid, double tol) {
  ProbeResult r;
  bool first = true;
  for (double t : grid) {
    const auto psd = schoenberg_gaussian_psd(bottleneck_distances, t, tol);
    r.scan.emplace_back(t, psd.min_eigenvalue);
    if (first || psd.min_eigenvalue < r.min_eigenvalue) {
      r.min_eigenvalue = psd.min_eigenvalue;
      r.t = t;
      r.eigenvector = psd.eigenvector;
      first = false;
    }
    r.witness = r.witness || !psd.psd;
  }
  return r;
}

inline int cmd_probe_kernel(const ProbeArgs& args, const GlobalOptions& g, std::ostream& out) {
  std::vector<PersistenceDiagram> diagrams;
  std::vector<std::string> labels;
  std::string description;
  if (!args.directory.empty()) {
    if (!args.builtin.file.empty() || args.builtin.knn || !args.builtin.torus.empty() ||
        args.builtin.three_point || args.builtin.line || args.builtin.random) {
      throw input_error("give either a diagram directory or a builtin family");
    }
    if (!fs::is_directory(args.directory)) {
      throw input_error("not a directory: " + args.directory);
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(args.directory)) {
      if (e.is_regular_file() && e.path().extension() == ".dgm") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      diagrams.push_back(read_diagram_file(f.string()));
      labels.push_back(f.filename().string());
    }
    description = args.directory;
  } else {
    const auto resolved = resolve_space(args.builtin, g);
    diagrams = kuratowski_embed(resolved.space).images;
    labels = resolved.space.labels();
    description = "embedded " + resolved.description;
  }
  if (diagrams.size() < 2) throw input_error("probe-kernel needs at least 2 diagrams");

  const auto grid = log_grid(args.t_min, args.t_max, args.t_count);
  const auto distances = bottleneck_space(diagrams, labels);
  const auto r = probe_gaussian(distances, grid, g.tol);

  Json j = report::document("probe-kernel");
  j["inputs_digest"] = report::inputs_digest(diagrams);
  j["source"] = description;
  j["diagrams"] = diagrams.size();
  j["grid"] = {{"t_min", report::number(args.t_min)},
               {"t_max", report::number(args.t_max)},
               {"count", args.t_count}};
  j["tolerance"] = report::number(g.tol);
  j["verdict"] = r.witness ? "witness" : "no witness";
  j["min_eigenvalue"] = report::number(r.min_eigenvalue);
  j["t"] = report::number(r.t);
  if (r.witness) j["witness_vector"] = report::numbers(r.eigenvector);
  Json scan = Json::array();
  for (const auto& [t, e] : r.scan) scan.push_back({report::number(t), report::number(e)});
  j["scan"] = scan;

  if (!g.json) {
    out << "source          " << description << " (" << diagrams.size() << " diagrams)\n";
    out << "verdict         " << (r.witness ? "witness" : "no witness") << '\n';
    out << "min eigenvalue  " << num(r.min_eigenvalue) << " at t = " << num(r.t) << '\n';
    if (r.witness) {
      out << "witness        ";
      for (Eigen::Index i = 0; i < r.eigenvector.size(); ++i) out << ' ' << num(r.eigenvector(i));
      out << '\n';
    }
  }
  emit_json(j, g, out, true);
  return kOk;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
  std::string name;
  int N = 6;
  double qmax = kDefaultQMax;
  std::vector<std::string> pairs;
  double t = 1.0;
  std::vector<int> sizes{4, 8, 16};
};

inline std::vector<std::pair<int, int>> parse_pairs(const std::vector<std::string>& items) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& item : items) {
    const auto parts = text::split(item, ',');
    const auto bad = [&] { return input_error("malformed grid pair \"" + item + "\", expected n,m"); };
    if (parts.size() != 2) throw bad();
    std::pair<int, int> p;
    for (int k = 0; k < 2; ++k) {
      const auto v = text::parse_double(parts[k]);
      if (!v || *v != std::floor(*v) || *v < 1 || *v > 1e6) throw bad();
      (k ? p.second : p.first) = static_cast<int>(*v);
    }
    pairs.push_back(p);
  }
  return pairs;
}

inline int experiment_roundness(const ExperimentArgs& a, const GlobalOptions& g,
                                std::ostream& out) {
  if (a.N < 2) throw input_error("roundness-decay needs --N >= 2");
  Json rows = Json::array();
  if (!g.json) {
    out << std::setw(4) << "n" << std::setw(20) << "threshold" << std::setw(20) << "supremum"
        << std::setw(20) << "difference" << '\n';
  }
  for (int n = 2; n <= a.N; ++n) {
    const auto embedded = kuratowski_embed(build_knn(n));
    const auto image_space = bottleneck_space(embedded.images);
    const auto sup = neg_type_supremum(image_space, a.qmax, g.tol);
    const double closed = knn_threshold(n);
    const double diff = std::abs(sup.value - closed);
    rows.push_back({{"n", n},
                    {"threshold", report::number(closed)},
                    {"supremum", report::number(sup.value)},
                    {"bound", sup.at_least ? ">=" : "="},
                    {"difference", report::number(diff)},
                    {"verdict", diff <= 1e-6 ? "matches" : "differs"}});
    if (!g.json) {
      out << std::setw(4) << n << std::setw(20) << num(closed) << std::setw(20) << num(sup.value)
          << std::setw(20) << num(diff) << '\n';
    }
  }
  Json j = report::document("experiment");
  j["experiment"] = "roundness-decay";
  j["tolerance"] = report::number(g.tol);
  j["rows"] = rows;
  emit_json(j, g, out, true);
  return kOk;
}

inline int experiment_union(const ExperimentArgs& a, const GlobalOptions& g, std::ostream& out) {
  const auto pairs = a.pairs.empty()
                         ? std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1},
                                                            {1, 3}, {2, 2}, {3, 1}}
                         : parse_pairs(a.pairs);
  const auto u = build_union_space(pairs);
  const auto r = verify_union_conditions(u);

  Json blocks = Json::array();
  for (std::size_t i = 0; i < u.blocks.size(); ++i) {
    blocks.push_back({{"n", u.blocks[i].n},
                      {"m", u.blocks[i].m},
                      {"points", u.blocks[i].grid.size()},
                      {"c", report::number(u.constants[i])}});
  }
  Json j = report::document("experiment");
  j["experiment"] = "union-conditions";
  j["blocks"] = blocks;
  j["constants"] = report::numbers(u.constants);
  j["isometric_blocks"] = r.isometric_blocks ? "pass" : "fail";
  j["separated_blocks"] = r.separated_blocks ? "pass" : "fail";
  j["max_block_residual"] = report::number(r.max_block_residual);
  j["min_separation_margin"] =
      r.min_separation_margin ? report::number(*r.min_separation_margin) : Json(nullptr);
  j["pairs_checked"] = r.pairs_checked;
  j["verdict"] = r.isometric_blocks && r.separated_blocks ? "pass" : "fail";

  if (!g.json) {
    out << std::setw(4) << "n" << std::setw(4) << "m" << std::setw(8) << "points" << std::setw(16)
        << "c" << '\n';
    for (std::size_t i = 0; i < u.blocks.size(); ++i) {
      out << std::setw(4) << u.blocks[i].n << std::setw(4) << u.blocks[i].m << std::setw(8)
          << u.blocks[i].grid.size() << std::setw(16) << num(u.constants[i]) << '\n';
    }
    out << "condition (1) within blocks   " << (r.isometric_blocks ? "pass" : "FAIL")
        << " (max residual " << num(r.max_block_residual) << ")\n";
    out << "condition (2) across blocks   " << (r.separated_blocks ? "pass" : "FAIL");
    if (r.min_separation_margin) out << " (min margin " << num(*r.min_separation_margin) << ")";
    out << "\npairs checked                 " << r.pairs_checked << '\n';
  }
  emit_json(j, g, out, true);
  return kOk;
}

inline int experiment_envelope(const ExperimentArgs& a, const GlobalOptions& g,
                               std::ostream& out) {
  if (!(a.t > 0)) throw input_error("--t must be positive");
  if (a.sizes.empty()) throw input_error("--sizes needs at least one grid size");
  Json rows = Json::array();
  if (!g.json) {
    out << std::setw(6) << "n" << std::setw(10) << "diameter" << std::setw(18) << "max output"
        << std::setw(18) << "rho_minus(diam)" << std::setw(18) << "ratio" << '\n';
  }
  for (int n : a.sizes) {
    if (n < 2) throw input_error("envelope grid sizes must be >= 2");
    const auto grid = build_torus_grid(n, 1);
    const auto images = kuratowski_embed(grid).images;
    const auto image_space = bottleneck_space(images, grid.labels());
    const auto env = distortion_envelope(image_space, gaussian_gram(image_space, a.t), g.tol);
    const auto& last = env.rows.back();
    const double ratio = last.rho_minus / last.input_distance;
    Json row{{"n", n},
             {"diameter", report::number(last.input_distance)},
             {"max_output", report::number(env.max_output)},
             {"rho_minus_at_diameter", report::number(last.rho_minus)},
             {"rho_plus_at_diameter", report::number(last.rho_plus)},
             {"ratio", report::number(ratio)}};
    Json envelope = Json::array();
    for (const auto& r : env.rows) {
      envelope.push_back({{"input_distance", report::number(r.input_distance)},
                          {"rho_minus", report::number(r.rho_minus)},
                          {"rho_plus", report::number(r.rho_plus)},
                          {"pairs", r.pairs}});
    }
    row["envelope"] = envelope;
    if (!env.note.empty()) row["note"] = env.note;
    rows.push_back(row);
    if (!g.json) {
      out << std::setw(6) << n << std::setw(10) << num(last.input_distance) << std::setw(18)
          << num(env.max_output) << std::setw(18) << num(last.rho_minus) << std::setw(18)
          << num(ratio) << '\n';
    }
  }
  Json j = report::document("experiment");
  j["experiment"] = "envelope";
  j["t"] = report::number(a.t);
  j["rows"] = rows;
  emit_json(j, g, out, true);
  return kOk;
}

inline int cmd_experiment(const ExperimentArgs& a, const GlobalOptions& g, std::ostream& out) {
  if (a.name == "roundness-decay") return experiment_roundness(a, g, out);
  if (a.name == "union-conditions") return experiment_union(a, g, out);
  if (a.name == "envelope") return experiment_envelope(a, g, out);
  throw input_error("unknown experiment: " + a.name +
                    " (expected roundness-decay, union-conditions or envelope)");
}

// ---------------------------------------------------------------------------

struct RealizeArgs {
  std::string diagram;
  int random = 0;
  bool verify = false;
};

inline int cmd_realize(const RealizeArgs& args, const GlobalOptions& g, std::ostream& out) {
  PersistenceDiagram d;
  if (args.random > 0) {
    if (!args.diagram.empty()) throw input_error("--random replaces the diagram file");
    auto rng = seeded_rng(g, "--random");
    d = random_diagram(rng, static_cast<std::size_t>(args.random));
  } else {
    if (args.diagram.empty()) throw input_error("realize needs a diagram file");
    d = read_diagram_file(args.diagram);
  }
  const auto complex = realize(d);
  std::ostringstream body;
  write_complex(body, complex);
  if (!g.out.empty()) write_text_file(g.out, body.str());

  std::optional<bool> verified;
  if (args.verify) verified = roundtrip_check(d);

  Json j = report::document("realize");
  j["inputs_digest"] = report::inputs_digest(std::vector{d});
  j["points"] = d.size();
  j["simplices"] = complex.size();
  if (!g.out.empty()) j["complex_file"] = g.out;
  j["roundtrip"] = verified ? Json(*verified ? "pass" : "fail") : Json(nullptr);

  if (g.json) {
    out << report::dump(j);
  } else {
    if (g.out.empty()) out << body.str();
    out << "# " << d.size() << " points, " << complex.size() << " simplices\n";
    if (verified) out << "# roundtrip " << (*verified ? "pass" : "FAIL") << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

/// Parses the command line and runs one command. Returns the process exit
/// code; all output goes to the given streams.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Persistence diagram geometry toolkit", "pdgeom"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  auto* seed_opt = app.add_option("--seed", g.seed, "seed for randomized inputs");
  app.add_option("--tol", g.tol, "relative spectral tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out,
                 "output path: directory for embed, complex file for realize, "
                 "JSON report otherwise");
  app.add_flag("--json", g.json, "print the JSON report instead of text");

  DistArgs dist;
  auto* dist_cmd = app.add_subcommand("dist", "distance between two diagrams");
  dist_cmd->add_option("a", dist.a, "first diagram file");
  dist_cmd->add_option("b", dist.b, "second diagram file");
  dist_cmd->add_option("--p", dist.p, "order p >= 1 or inf")->capture_default_str();
  dist_cmd->add_flag("--oracle", dist.oracle, "cross-check by exhaustive matching");
  dist_cmd->add_option("--random", dist.random, "two random diagrams with <= N points")
      ->check(CLI::PositiveNumber);

  EmbedArgs embed;
  auto* embed_cmd = app.add_subcommand("embed", "embed a finite metric space into diagrams");
  embed.source.add_to(embed_cmd);
  embed_cmd->add_option("--c", embed.c, "scale, must exceed the diameter");

  CertifyArgs certify;
  auto* certify_cmd = app.add_subcommand("certify", "negative type supremum and certificates");
  certify.source.add_to(certify_cmd);
  certify_cmd->add_option("--qmax", certify.qmax, "upper end of the bisection")
      ->capture_default_str();
  certify_cmd->add_option("--q", certify.qs, "exponents to certify individually");

  ProbeArgs probe;
  auto* probe_cmd =
      app.add_subcommand("probe-kernel", "search for a non-psd Gaussian bottleneck Gram matrix");
  probe_cmd->add_option("diagrams", probe.directory, "directory of .dgm files");
  probe.builtin.add_to(probe_cmd, false);
  probe_cmd->add_option("--t-min", probe.t_min)->capture_default_str();
  probe_cmd->add_option("--t-max", probe.t_max)->capture_default_str();
  probe_cmd->add_option("--t-count", probe.t_count)->capture_default_str();

  ExperimentArgs experiment;
  auto* exp_cmd = app.add_subcommand("experiment", "reproduction experiments");
  exp_cmd->add_option("name", experiment.name,
                      "roundness-decay, union-conditions or envelope")
      ->required();
  exp_cmd->add_option("--N", experiment.N, "largest n for roundness-decay")
      ->capture_default_str();
  exp_cmd->add_option("--qmax", experiment.qmax)->capture_default_str();
  exp_cmd->add_option("--pairs", experiment.pairs, "grid pairs n,m for union-conditions");
  exp_cmd->add_option("--t", experiment.t, "Gaussian kernel parameter")->capture_default_str();
  exp_cmd->add_option("--sizes", experiment.sizes, "cycle sizes for envelope");

  RealizeArgs realize_args;
  auto* realize_cmd = app.add_subcommand("realize", "realize a diagram as H1 of a complex");
  realize_cmd->add_option("diagram", realize_args.diagram, "diagram file");
  realize_cmd->add_option("--random", realize_args.random, "random diagram with <= N points")
      ->check(CLI::PositiveNumber);
  realize_cmd->add_flag("--verify", realize_args.verify, "recompute persistence and compare");

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInput;
  }
  g.has_seed = seed_opt->count() > 0;

  try {
    if (*dist_cmd) return cmd_dist(dist, g, out);
    if (*embed_cmd) return cmd_embed(embed, g, out);
    if (*certify_cmd) return cmd_certify(certify, g, out);
    if (*probe_cmd) return cmd_probe_kernel(probe, g, out);
    if (*exp_cmd) return cmd_experiment(experiment, g, out);
    if (*realize_cmd) return cmd_realize(realize_args, g, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

}  // namespace pdgeom::cli
