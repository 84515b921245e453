#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "pdgeom/embedding.hpp"
#include "pdgeom/report.hpp"

using namespace pdgeom;
using report::Json;

namespace {

std::vector<std::string> keys(const Json& j) {
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
  return out;
}

}  // namespace

TEST(Report, DocumentStartsWithSchema) {
  const auto j = report::document("dist");
  EXPECT_EQ((std::vector<std::string>{"schema", "operation"}), keys(j));
  EXPECT_EQ("1", j["schema"]);
  EXPECT_EQ("{\n  \"schema\": \"1\",\n  \"operation\": \"dist\"\n}\n", report::dump(j));
}

TEST(Report, NumbersKeepTwelveSignificantDigits) {
  EXPECT_EQ("0.3", report::number(0.1 + 0.2).dump());
  EXPECT_EQ("0.333333333333", report::number(1.0 / 3.0).dump());
  EXPECT_EQ("123456789012.0", report::number(123456789012.4).dump());
  EXPECT_EQ("-2.5e-20", report::number(-2.5e-20).dump());
  EXPECT_TRUE(report::number(kInfinity).is_null());
  EXPECT_EQ("[1.0,null]", report::numbers(std::vector<double>{1.0, -kInfinity}).dump());
}

TEST(Report, FnvDigest) {
  EXPECT_EQ("cbf29ce484222325", report::fnv1a_hex(""));
  EXPECT_EQ("af63dc4c8601ec8c", report::fnv1a_hex("a"));
  EXPECT_EQ("85944171f73967e8", report::fnv1a_hex("foobar"));

  const auto k = build_knn(2);
  EXPECT_EQ(report::inputs_digest(k), report::inputs_digest(build_knn(2)));
  EXPECT_NE(report::inputs_digest(k), report::inputs_digest(build_knn(3)));
  EXPECT_EQ(0u, report::inputs_digest(k).rfind("fnv1a64:", 0));

  const std::vector<PersistenceDiagram> a{PersistenceDiagram{{0, 1}}, PersistenceDiagram{}};
  const std::vector<PersistenceDiagram> b{PersistenceDiagram{}, PersistenceDiagram{{0, 1}}};
  EXPECT_NE(report::inputs_digest(a), report::inputs_digest(b));
}

TEST(Report, CertificateLayout) {
  const auto k = build_knn(2);
  const auto fail = neg_type_holds(k, 2.0);
  const auto j = report::certificate(fail, report::inputs_digest(k), 1e-9);
  EXPECT_EQ((std::vector<std::string>{"operation", "inputs_digest", "q", "verdict",
                                      "extremal_eigenvalue", "witness_vector", "tolerance"}),
            keys(j));
  EXPECT_EQ("fails", j["verdict"]);
  EXPECT_EQ(4u, j["witness_vector"].size());
  EXPECT_EQ(0.5, j["witness_vector"][0].get<double>());

  const auto ok = report::certificate(neg_type_holds(k, 1.0), "d", 1e-9);
  EXPECT_EQ("holds", ok["verdict"]);
  EXPECT_FALSE(ok.contains("witness_vector"));
}

TEST(Report, Supremum) {
  const auto j = report::supremum({2.0, true, false});
  EXPECT_EQ(">=", j["bound"]);
  EXPECT_EQ("=", report::supremum({0.5, false, false})["bound"]);
  EXPECT_TRUE(report::supremum({0.0, false, true})["fails_at_zero"].get<bool>());
}
