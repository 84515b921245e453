#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "pdgeom/assignment.hpp"
#include "pdgeom/bipartite_matching.hpp"
#include "pdgeom/random.hpp"

using namespace pdgeom;

namespace {

using Graph = std::vector<std::vector<std::size_t>>;
constexpr double inf = std::numeric_limits<double>::infinity();

// Exhaustive maximum matching size.
std::size_t brute_max_matching(const Graph& g, std::size_t right) {
  std::vector<char> used(right, 0);
  auto best = [&](auto&& self, std::size_t u) -> std::size_t {
    if (u == g.size()) return 0;
    std::size_t b = self(self, u + 1);
    for (auto v : g[u]) {
      if (used[v]) continue;
      used[v] = 1;
      b = std::max(b, 1 + self(self, u + 1));
      used[v] = 0;
    }
    return b;
  };
  return best(best, 0);
}

double brute_min_assignment(const CostMatrix& c) {
  std::vector<std::size_t> perm(c.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = inf;
  do {
    double s = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) s += c(i, perm[i]);
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST(HopcroftKarp, EmptyAndTrivialGraphs) {
  const Graph none;
  EXPECT_EQ(0u, HopcroftKarp(none, 0).size());
  EXPECT_TRUE(HopcroftKarp(none, 0).is_perfect());

  const Graph one{{0}};
  HopcroftKarp hk(one, 1);
  EXPECT_TRUE(hk.is_perfect());
  EXPECT_EQ(0u, hk.partner_of_left(0));

  const Graph isolated{{}, {0}};
  EXPECT_EQ(1u, HopcroftKarp(isolated, 1).size());
}

TEST(HopcroftKarp, NeedsAugmentingPath) {
  // Greedy 0->0 blocks vertex 1; the maximum matching reroutes 0->1.
  const Graph g{{0, 1}, {0}};
  HopcroftKarp hk(g, 2);
  EXPECT_TRUE(hk.is_perfect());
  EXPECT_EQ(1u, hk.partner_of_left(0));
  EXPECT_EQ(0u, hk.partner_of_left(1));
}

TEST(HopcroftKarp, AgreesWithExhaustiveSearch) {
  Rng rng(42);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t left = rng() % 7, right = rng() % 7;
    Graph g(left);
    for (auto& row : g) {
      for (std::size_t v = 0; v < right; ++v) {
        if (rng() % 3 == 0) row.push_back(v);
      }
    }
    HopcroftKarp hk(g, right);
    ASSERT_EQ(brute_max_matching(g, right), hk.size());
    // The reported matching uses only graph edges and is injective.
    std::vector<char> taken(right, 0);
    std::size_t count = 0;
    for (std::size_t u = 0; u < left; ++u) {
      const auto v = hk.partner_of_left(u);
      if (v == HopcroftKarp::npos) continue;
      ASSERT_NE(g[u].end(), std::find(g[u].begin(), g[u].end(), v));
      ASSERT_FALSE(taken[v]);
      taken[v] = 1;
      ++count;
    }
    EXPECT_EQ(hk.size(), count);
  }
}

TEST(Assignment, SmallHandExample) {
  CostMatrix c(3);
  const double values[3][3] = {{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) c(i, j) = values[i][j];
  }
  const auto a = solve_assignment(c);
  double total = 0;
  for (std::size_t i = 0; i < 3; ++i) total += c(i, a[i]);
  EXPECT_EQ(5.0, total);  // 1 + 2 + 2
}

TEST(Assignment, ForbiddenEntries) {
  CostMatrix c(2, inf);
  c(0, 1) = 3;
  c(1, 0) = 4;
  const auto a = solve_assignment(c);
  EXPECT_EQ(1u, a[0]);
  EXPECT_EQ(0u, a[1]);

  CostMatrix impossible(2, inf);
  impossible(0, 0) = 1;
  impossible(1, 0) = 1;
  EXPECT_THROW(solve_assignment(impossible), std::domain_error);
}

TEST(Assignment, AgreesWithPermutationSearch) {
  Rng rng(5);
  std::uniform_real_distribution<double> u(0, 10);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    CostMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        c(i, j) = (rng() % 5 == 0 && i != j) ? inf : std::floor(u(rng) * 4) / 4;
      }
    }
    const auto a = solve_assignment(c);
    std::vector<char> seen(n, 0);
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_FALSE(seen[a[i]]);
      seen[a[i]] = 1;
      total += c(i, a[i]);
    }
    EXPECT_NEAR(brute_min_assignment(c), total, 1e-12);
  }
}
