#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using pdgeom::report::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pdgeom");
  std::ostringstream out, err;
  const int code = pdgeom::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(PDGEOM_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const auto dir = fs::path(testing::TempDir()) / ("pdgeom_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST(CliDist, ThreePointImages) {
  const auto r = run({"dist", data("three_point_x1.dgm"), data("three_point_x2.dgm"), "--p", "inf", "--json"});
  ASSERT_EQ(0, r.code) << r.err;
  EXPECT_EQ(0.3, r.json()["value"].get<double>());
  EXPECT_EQ("inf", r.json()["p"]);

  const auto text = run({"dist", data("three_point_x1.dgm"), data("three_point_x2.dgm")});
  EXPECT_NE(std::string::npos, text.out.find("distance 0.3\n"));
}

TEST(CliDist, AgainstEmptyDiagram) {
  const auto r = run({"dist", data("single.dgm"), data("empty.dgm"), "--json"});
  ASSERT_EQ(0, r.code) << r.err;
  EXPECT_EQ(1.0, r.json()["value"].get<double>());
}

TEST(CliDist, OracleAgreesOnRandomDiagrams) {
  for (int seed = 0; seed < 20; ++seed) {
    for (const char* p : {"1", "2", "inf"}) {
      const auto r = run({"dist", "--random", "3", "--seed", std::to_string(seed), "--oracle",
                          "--p", p, "--json"});
      ASSERT_EQ(0, r.code) << r.err;
      EXPECT_EQ("agrees", r.json()["oracle"]["verdict"]) << "seed " << seed << " p " << p;
    }
  }
}

TEST(CliExitCodes, Contract) {
  EXPECT_EQ(0, run({"--help"}).code);
  EXPECT_EQ(2, run({}).code);
  EXPECT_EQ(2, run({"dist", "--bogus"}).code);
  EXPECT_EQ(2, run({"dist", data("bad_diagram.dgm"), data("empty.dgm")}).code);
  EXPECT_EQ(2, run({"dist", data("missing.dgm"), data("empty.dgm")}).code);
  EXPECT_EQ(2, run({"dist", data("single.dgm"), data("empty.dgm"), "--p", "0.5"}).code);
  EXPECT_EQ(2, run({"dist", "--random", "3"}).code);
  EXPECT_EQ(3, run({"dist", "--random", "8", "--seed", "3", "--oracle"}).code);
  EXPECT_EQ(4, run({"embed", "--three-point", "--c", "0.5"}).code);
  EXPECT_EQ(2, run({"embed", "--three-point", "--knn", "2"}).code);
  EXPECT_EQ(3, run({"embed", "--torus", "200", "2"}).code);
  EXPECT_EQ(2, run({"experiment", "bogus"}).code);
  EXPECT_EQ(2, run({"realize", data("bad_diagram.dgm")}).code);

  const auto r = run({"embed", "--three-point", "--c", "0.5"});
  EXPECT_EQ(0u, r.err.rfind("error: scale violates hypothesis", 0)) << r.err;
}

TEST(CliEmbed, ThreePointWritesDiagramsAndReport) {
  const auto dir = scratch("embed_three");
  const auto r = run({"embed", data("three_point.csv"), "--c", "1", "--out", dir.string()});
  ASSERT_EQ(0, r.code) << r.err;
  for (int i = 1; i <= 3; ++i) EXPECT_TRUE(fs::exists(dir / ("point_" + std::to_string(i) + ".dgm")));
  EXPECT_EQ((pdgeom::PersistenceDiagram{{0, 2}, {2, 4.3}, {4, 6.8}}),
            pdgeom::read_diagram_file((dir / "point_1.dgm").string()));
  const auto report = Json::parse(slurp(dir / "report.json"));
  EXPECT_EQ("1", report["schema"]);
  EXPECT_EQ("pass", report["verdict"]);
  EXPECT_LE(report["max_residual"].get<double>(), 1e-12);
  EXPECT_EQ(9u, report["residuals"].size());
  EXPECT_EQ(1.0, report["c"].get<double>());
}

TEST(CliEmbed, OnePointSpace) {
  const auto dir = scratch("embed_one");
  {
    std::ofstream f(dir / "one.csv");
    f << "0\n";
  }
  const auto out = dir / "images";
  const auto r = run({"embed", (dir / "one.csv").string(), "--out", out.string()});
  ASSERT_EQ(0, r.code) << r.err;
  EXPECT_TRUE(fs::exists(out / "point_1.dgm"));
  EXPECT_FALSE(fs::exists(out / "point_2.dgm"));
  EXPECT_EQ("pass", Json::parse(slurp(out / "report.json"))["verdict"]);
}

TEST(CliEmbed, RandomSpaceIsIsometric) {
  const auto r = run({"embed", "--random", "15", "--seed", "11", "--json"});
  ASSERT_EQ(0, r.code) << r.err;
  EXPECT_LE(r.json()["max_residual"].get<double>(), 1e-12);
  EXPECT_EQ("pass", r.json()["annulus"]["verdict"]);
}

TEST(CliEmbed, NonMetricInputReportsViolation) {
  const auto r = run({"embed", data("not_metric.csv"), "--json"});
  ASSERT_EQ(0, r.code) << r.err;
  EXPECT_EQ("fail", r.json()["isometry"]);
  EXPECT_TRUE(r.json().contains("metric_violation"));
}

TEST(CliCertify, Examples) {
  const auto k4 = run({"certify", "--knn", "4", "--json"});
  ASSERT_EQ(0, k4.code) << k4.err;
  EXPECT_NEAR(0.4150375, k4.json()["supremum"]["value"].get<double>(), 1e-6);
  EXPECT_EQ("matches", k4.json()["closed_form"]["verdict"]);

  const auto k2 = run({"certify", "--knn", "2", "--json"});
  EXPECT_NEAR(1.0, k2.json()["supremum"]["value"].get<double>(), 1e-6);

  const auto line = run({"certify", data("line3.csv"), "--qmax", "2", "--json"});
  ASSERT_EQ(0, line.code) << line.err;
  EXPECT_EQ(2.0, line.json()["supremum"]["value"].get<double>());
  EXPECT_EQ(">=", line.json()["supremum"]["bound"]);
  const auto text = run({"certify", data("line3.csv"), "--qmax", "2"});
  EXPECT_NE(std::string::npos, text.out.find(">= 2"));
}

TEST(CliCertify, PerExponentCertificatesAndReportFile) {
  const auto dir = scratch("certify");
  const auto r = run({"certify", "--knn", "2", "--q", "1", "2", "--out", (dir / "c.json").string()});
  ASSERT_EQ(0, r.code) << r.err;
  const auto j = Json::parse(slurp(dir / "c.json"));
  ASSERT_EQ(2u, j["certificates"].size());
  EXPECT_EQ("holds", j["certificates"][0]["verdict"]);
  EXPECT_EQ("fails", j["certificates"][1]["verdict"]);
  EXPECT_EQ(4u, j["certificates"][1]["witness_vector"].size());
}

TEST(CliProbeKernel, Examples) {
  const auto k33 = run({"probe-kernel", "--knn", "3", "--json"});
  ASSERT_EQ(0, k33.code) << k33.err;
  EXPECT_EQ("witness", k33.json()["verdict"]);
  EXPECT_LT(k33.json()["min_eigenvalue"].get<double>(), -1e-8);
  EXPECT_EQ(6u, k33.json()["witness_vector"].size());
  EXPECT_EQ(121u, k33.json()["scan"].size());

  const auto line = run({"probe-kernel", "--line", "--json"});
  ASSERT_EQ(0, line.code) << line.err;
  EXPECT_EQ("no witness", line.json()["verdict"]);
  EXPECT_FALSE(line.json().contains("witness_vector"));

  const auto dir = scratch("probe_two");
  fs::copy_file(data("three_point_x1.dgm"), dir / "a.dgm");
  fs::copy_file(data("three_point_x2.dgm"), dir / "b.dgm");
  const auto two = run({"probe-kernel", dir.string(), "--json"});
  ASSERT_EQ(0, two.code) << two.err;
  EXPECT_EQ("no witness", two.json()["verdict"]);
  EXPECT_EQ(2u, two.json()["diagrams"].get<std::size_t>());

  fs::remove(dir / "b.dgm");
  EXPECT_EQ(2, run({"probe-kernel", dir.string()}).code);
}

TEST(CliExperiment, RoundnessDecay) {
  const auto r = run({"experiment", "roundness-decay", "--N", "6", "--json"});
  ASSERT_EQ(0, r.code) << r.err;
  const auto rows = r.json()["rows"];
  ASSERT_EQ(5u, rows.size());
  const double expected[] = {1, 0.585, 0.415, 0.322, 0.263};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(expected[i], rows[i]["threshold"].get<double>(), 5e-4);
    EXPECT_NEAR(rows[i]["threshold"].get<double>(), rows[i]["supremum"].get<double>(), 1e-6);
    EXPECT_EQ("matches", rows[i]["verdict"]);
  }
}

TEST(CliExperiment, UnionConditions) {
  const auto r = run({"experiment", "union-conditions", "--pairs", "1,1", "1,2", "2,1", "--json"});
  ASSERT_EQ(0, r.code) << r.err;
  EXPECT_EQ((std::vector<double>{1, 12, 48}), r.json()["constants"].get<std::vector<double>>());
  EXPECT_EQ("pass", r.json()["verdict"]);
  EXPECT_EQ(2, run({"experiment", "union-conditions", "--pairs", "1"}).code);
  EXPECT_EQ(2, run({"experiment", "union-conditions", "--pairs", "1,1", "1,1"}).code);
}

TEST(CliExperiment, Envelope) {
  const auto r = run({"experiment", "envelope", "--t", "1", "--sizes", "4", "8", "16", "--json"});
  ASSERT_EQ(0, r.code) << r.err;
  const auto rows = r.json()["rows"];
  ASSERT_EQ(3u, rows.size());
  for (const auto& row : rows) EXPECT_LT(row["max_output"].get<double>(), std::sqrt(2.0));
  EXPECT_EQ(8.0, rows[2]["diameter"].get<double>());
  EXPECT_GT(rows[0]["ratio"].get<double>(), rows[2]["ratio"].get<double>());
}

TEST(CliRealize, Examples) {
  const auto dir = scratch("realize");
  const auto out = dir / "single.cpx";
  const auto r = run({"realize", data("single.dgm"), "--verify", "--out", out.string(), "--json"});
  ASSERT_EQ(0, r.code) << r.err;
  EXPECT_EQ("pass", r.json()["roundtrip"]);
  EXPECT_EQ(7u, pdgeom::read_complex_file(out.string()).size());

  const auto empty = run({"realize", data("empty.dgm"), "--verify", "--json"});
  EXPECT_EQ("pass", empty.json()["roundtrip"]);
  EXPECT_EQ(0u, empty.json()["simplices"].get<std::size_t>());

  const auto random = run({"realize", "--random", "12", "--seed", "9", "--verify", "--json"});
  ASSERT_EQ(0, random.code) << random.err;
  EXPECT_EQ("pass", random.json()["roundtrip"]);
}

TEST(CliDeterminism, RepeatedRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands{
      {"certify", "--knn", "3", "--q", "0.5", "1", "--json"},
      {"dist", "--random", "6", "--seed", "42", "--p", "2", "--json"},
      {"embed", "--random", "10", "--seed", "42", "--json"},
      {"probe-kernel", "--knn", "3", "--json"},
      {"experiment", "envelope", "--json"},
  };
  for (const auto& c : commands) {
    const auto a = run(c), b = run(c);
    EXPECT_EQ(0, a.code) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}
