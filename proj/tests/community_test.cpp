#include <gtest/gtest.h>

#include <cmath>

#include "netres/community.hpp"
#include "netres/synth.hpp"
#include "oracles.hpp"

using namespace netres;

namespace {
WeightedGraph scaled(const WeightedGraph& g, double c) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.w *= c;
  return WeightedGraph(g.node_count(), std::move(edges));
}

// Max Q over every labeling in [0, n)^n, straight from the double-sum formula.
double brute_force_optimum(const WeightedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> c(n, 0);
  double best = -INFINITY;
  for (;;) {
    best = std::max(best, oracle::modularity(g, c));
    std::size_t i = 0;
    while (i < n && ++c[i] == n) c[i++] = 0;
    if (i == n) break;
  }
  return best;
}
}  // namespace

TEST(CanonicalPartition, RelabelsByFirstAppearance) {
  const std::vector<CommunityId> raw{7, 7, 3, 9, 3};
  const auto p = canonical_partition(raw);
  EXPECT_EQ(p.assignment, (std::vector<CommunityId>{0, 0, 1, 2, 1}));
  EXPECT_EQ(p.community_count, 3u);
}

TEST(Modularity, AllInOneIsZero) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = weighted_random_graph(20, 0.3, 0.01, 1.0, seed);
    if (g.edge_count() == 0) continue;
    EXPECT_NEAR(modularity(g, std::vector<CommunityId>(20, 0)), 0.0, 1e-12);
  }
}

TEST(Modularity, TwoDisjointTriangles) {
  const auto g = oracle::disjoint_cliques({3, 3});
  const std::vector<CommunityId> c{0, 0, 0, 1, 1, 1};
  EXPECT_NEAR(oracle::modularity(g, c), 0.5, 1e-12);
  EXPECT_NEAR(modularity(g, c), 0.5, 1e-12);
}

TEST(Modularity, MatchesDoubleSumOracle) {
  detail::Engine eng(3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = weighted_random_graph(15, 0.3, 0.05, 1.0, seed);
    if (g.edge_count() == 0) continue;
    std::vector<CommunityId> c(15);
    for (auto& x : c) x = static_cast<CommunityId>(detail::uniform_below(eng, 4));
    EXPECT_NEAR(modularity(g, c), oracle::modularity(g, c), 1e-12);
  }
}

TEST(Modularity, InvariantUnderUniformScaling) {
  detail::Engine eng(8);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = weighted_random_graph(20, 0.25, 0.05, 1.0, seed);
    std::vector<CommunityId> c(20);
    for (auto& x : c) x = static_cast<CommunityId>(detail::uniform_below(eng, 3));
    const double q = modularity(g, c);
    for (double scale : {1e-3, 0.37, 12.0, 1e4})
      EXPECT_LE(std::fabs(modularity(scaled(g, scale), c) - q), 1e-9 * std::max(1.0, std::fabs(q)));
  }
}

TEST(Modularity, Errors) {
  EXPECT_THROW(modularity(WeightedGraph(3, {}), std::vector<CommunityId>{0, 0, 0}), InvalidArgument);
  EXPECT_THROW(modularity(WeightedGraph(2, {{0, 1, 1.0}}), std::vector<CommunityId>{0}), InvalidArgument);
}

TEST(Exhaustive, SingleEdgeKeepsBothTogether) {
  const auto p = exhaustive_best_partition(WeightedGraph(2, {{0, 1, 1.0}}));
  EXPECT_EQ(p.community_count, 1u);
  EXPECT_NEAR(p.q, 0.0, 1e-15);
}

TEST(Exhaustive, TwoDisjointTriangles) {
  const auto p = exhaustive_best_partition(oracle::disjoint_cliques({3, 3}));
  EXPECT_EQ(p.assignment, (std::vector<CommunityId>{0, 0, 0, 1, 1, 1}));
  EXPECT_NEAR(p.q, 0.5, 1e-12);
}

TEST(Exhaustive, FourCycleOptimum) {
  const WeightedGraph cycle(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}});
  const double optimum = brute_force_optimum(cycle);
  EXPECT_NEAR(optimum, 0.0, 1e-12);  // {01|23} and the all-in-one partition tie at 0
  const auto p = exhaustive_best_partition(cycle);
  EXPECT_NEAR(p.q, optimum, 1e-12);
  EXPECT_EQ(p.community_count, 1u);  // first in enumeration order wins the tie
}

TEST(Exhaustive, MatchesLabelingBruteForce) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto g = weighted_random_graph(6, 0.5, 0.1, 1.0, seed);
    if (g.edge_count() == 0) continue;
    EXPECT_NEAR(exhaustive_best_partition(g).q, brute_force_optimum(g), 1e-12);
  }
}

TEST(Exhaustive, Errors) {
  EXPECT_THROW(exhaustive_best_partition(weighted_random_graph(13, 0.5, 0.1, 1.0, 1)), InvalidArgument);
  EXPECT_THROW(exhaustive_best_partition(WeightedGraph(3, {})), InvalidArgument);
}

TEST(Louvain, RecoversTwoDisjointTriangles) {
  const auto p = louvain(oracle::disjoint_cliques({3, 3}), 1, 10);
  EXPECT_EQ(p.assignment, (std::vector<CommunityId>{0, 0, 0, 1, 1, 1}));
  EXPECT_NEAR(p.q, 0.5, 1e-12);
}

TEST(Louvain, ReturnedQMatchesModularity) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto g = weighted_random_graph(40, 0.15, 0.05, 1.0, seed);
    const auto p = louvain(g, seed, 3);
    EXPECT_EQ(p.q, modularity(g, p));
    for (std::size_t v = 0; v < p.assignment.size(); ++v) EXPECT_LT(p.assignment[v], p.community_count);
    EXPECT_GE(p.q, -1.0);
    EXPECT_LE(p.q, 1.0);
  }
}

TEST(Louvain, NeverExceedsExhaustiveOptimum) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = weighted_random_graph(4 + seed % 7, 0.45, 0.05, 1.0, 100 + seed);
    if (g.edge_count() == 0) continue;
    const auto best = exhaustive_best_partition(g);
    EXPECT_LE(louvain(g, seed, 5).q, best.q + 1e-12);
  }
}

TEST(Louvain, DeterministicForSeed) {
  const auto g = weighted_random_graph(80, 0.08, 0.05, 1.0, 4);
  const auto a = louvain(g, 17, 4);
  const auto b = louvain(g, 17, 4);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.q, b.q);
}

TEST(Louvain, ThreadCountDoesNotChangeResult) {
  const auto g = weighted_random_graph(80, 0.08, 0.05, 1.0, 6);
  LouvainOptions opt;
  opt.seed = 3;
  opt.restarts = 6;
  const auto serial = louvain(g, opt);
  opt.threads = 3;
  const auto parallel = louvain(g, opt);
  EXPECT_EQ(serial.assignment, parallel.assignment);
}

TEST(Louvain, RecoversStrongPlantedPartition) {
  PlantedPartitionSpec spec;
  spec.block_sizes = {15, 15, 15, 15};
  spec.p_in = 0.8;
  spec.p_out = 0.02;
  spec.w_in = {0.5, 1.0};
  spec.w_out = {0.05, 0.1};
  spec.seed = 21;
  const auto pg = planted_partition(spec);
  const auto p = louvain(pg.graph, 5, 10);
  EXPECT_EQ(p.assignment, pg.planted.assignment);
}

TEST(Louvain, SingletonsAllowedForIsolatedNodes) {
  const WeightedGraph g(5, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const auto p = louvain(g, 1, 2);
  EXPECT_EQ(p.community_count, 3u);
  EXPECT_NE(p.assignment[3], p.assignment[4]);
}

TEST(Louvain, Errors) {
  EXPECT_THROW(louvain(WeightedGraph(4, {}), 1, 1), InvalidArgument);
  EXPECT_THROW(louvain(WeightedGraph(2, {{0, 1, 1.0}}), 1, 0), InvalidArgument);
}
