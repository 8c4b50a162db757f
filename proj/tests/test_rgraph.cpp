#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "graphmat/index_scheme.hpp"
#include "graphmat/rgraph.hpp"

using namespace graphmat;

TEST(InputGraph, SingleVertexHasNoPairs) {
  const auto g = InputGraph::sample(1, 42);
  EXPECT_EQ(g.pair_count(), 0u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(InputGraph, RejectsZeroVertices) { EXPECT_THROW(InputGraph::sample(0, 1), Error); }

TEST(InputGraph, DeterministicGivenSeed) {
  EXPECT_EQ(InputGraph::sample(50, 9), InputGraph::sample(50, 9));
  EXPECT_FALSE(InputGraph::sample(50, 9) == InputGraph::sample(50, 10));
}

TEST(InputGraph, DensityNearHalf) {
  const auto g = InputGraph::sample(2000, 77);
  EXPECT_NEAR(g.density(), 0.5, 0.01);
}

TEST(InputGraph, SymmetricWithoutSelfLoops) {
  const auto g = InputGraph::sample(70, 3);
  for (std::size_t i = 0; i < g.n(); ++i) {
    EXPECT_FALSE(g.adjacent(i, i));
    for (std::size_t j = 0; j < g.n(); ++j) EXPECT_EQ(g.adjacent(i, j), g.adjacent(j, i));
  }
}

TEST(EdgeVariable, SignFollowsAdjacency) {
  const auto g = InputGraph::from_edges(4, {{0, 1}, {2, 3}});
  EXPECT_EQ(g.edge_variable(0, 1), 1);
  EXPECT_EQ(g.edge_variable(1, 0), 1);
  EXPECT_EQ(g.edge_variable(0, 2), -1);
  EXPECT_EQ(g.edge_variable(3, 2), 1);
  EXPECT_THROW((void)g.edge_variable(1, 1), Error);
  EXPECT_THROW((void)g.edge_variable(0, 4), Error);
}

TEST(Chi, EmptySingleAndMixed) {
  const auto g = InputGraph::from_edges(4, {{0, 1}});
  EXPECT_EQ(chi(g, {}), 1);
  EXPECT_EQ(chi(g, {{0, 1}}), 1);
  EXPECT_EQ(chi(g, {{0, 2}}), -1);
  EXPECT_EQ(chi(g, {{0, 1}, {2, 3}}), -1);
  EXPECT_THROW(chi(g, {{2, 2}}), Error);
}

TEST(Chi, ZeroMeanEdgeVariable) {
  const std::size_t samples = 10000;
  long sum = 0;
  for (std::size_t s = 0; s < samples; ++s) sum += InputGraph::sample(6, derive_seed(1, s)).edge_variable(2, 4);
  EXPECT_LE(std::fabs(static_cast<double>(sum) / samples), 3.0 / std::sqrt(static_cast<double>(samples)));
}

TEST(Chi, Orthogonality) {
  const std::size_t samples = 10000;
  const std::vector<VertexPair> e1 = {{0, 1}, {1, 2}}, e2 = {{0, 1}, {3, 4}};
  long sum = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto g = InputGraph::sample(6, derive_seed(2, s));
    sum += chi(g, e1) * chi(g, e2);
    EXPECT_EQ(chi(g, e1) * chi(g, e1), 1);
  }
  EXPECT_LE(std::fabs(static_cast<double>(sum) / samples), 5.0 / std::sqrt(static_cast<double>(samples)));
}

TEST(Chi, PermutationEquivariance) {
  std::mt19937_64 rng(4);
  const auto g = InputGraph::sample(12, 8);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<std::size_t> sigma(12);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    const auto h = g.relabeled(sigma);
    std::vector<VertexPair> e = {{0, 5}, {3, 7}, {2, 11}}, se;
    for (auto [a, b] : e) se.emplace_back(sigma[a], sigma[b]);
    EXPECT_EQ(chi(g, e), chi(h, se));
  }
}

TEST(InputGraph, DumpLoadRoundTrip) {
  const auto g = InputGraph::sample(37, 5);
  std::stringstream buf;
  g.dump(buf);
  const std::string bytes = buf.str();
  ASSERT_EQ(bytes.size(), 8u + (g.pair_count() + 7) / 8);
  EXPECT_EQ(static_cast<unsigned char>(bytes[0]), 37u);
  const auto back = InputGraph::load(buf);
  EXPECT_EQ(back, g);
}

TEST(InputGraph, DumpBitOrder) {
  // pairs of n=3 in order {0,1}, {0,2}, {1,2}; only {0,2} present
  const auto g = InputGraph::from_edges(3, {{2, 0}});
  std::stringstream buf;
  g.dump(buf);
  EXPECT_EQ(static_cast<unsigned char>(buf.str()[8]), 0b010u);
}

TEST(SubsetIndex, RankUnrankBijection) {
  const SubsetIndex idx(9, 3);
  EXPECT_EQ(idx.size(), 84u);
  Subset s = idx.first();
  std::uint64_t expected = 0;
  do {
    EXPECT_EQ(idx.rank(s), expected);
    EXPECT_EQ(idx.unrank(expected), s);
    ++expected;
  } while (idx.next(s));
  EXPECT_EQ(expected, idx.size());
}

TEST(SubsetIndex, RejectsInvalidSubsets) {
  const SubsetIndex idx(5, 2);
  EXPECT_THROW((void)idx.rank({2, 1}), Error);
  EXPECT_THROW((void)idx.rank({1, 5}), Error);
  EXPECT_THROW((void)idx.rank({1}), Error);
  EXPECT_THROW((void)idx.unrank(10), Error);
}

TEST(SubsetIndex, LargeRanks) {
  const SubsetIndex idx(2048, 3);
  EXPECT_EQ(idx.size(), binomial(2048, 3));
  const Subset s = {100, 900, 2047};
  EXPECT_EQ(idx.unrank(idx.rank(s)), s);
  EXPECT_EQ(idx.rank({2045, 2046, 2047}), idx.size() - 1);
}

TEST(SubsetIndex, EmptySubsets) {
  const SubsetIndex idx(7, 0);
  EXPECT_EQ(idx.size(), 1u);
  EXPECT_EQ(idx.rank({}), 0u);
}

TEST(DeriveSeed, DistinctStreams) {
  EXPECT_NE(derive_seed(0, 0), derive_seed(0, 1));
  EXPECT_NE(derive_seed(0, 1), derive_seed(1, 0));
  EXPECT_EQ(derive_seed(5, 6), derive_seed(5, 6));
}
