#include <gtest/gtest.h>

#include "netres/cheeger.hpp"
#include "netres/spectral.hpp"
#include "netres/synth.hpp"
#include "oracles.hpp"

using namespace netres;

namespace {
std::vector<bool> mask_of(std::size_t n, const std::vector<NodeId>& subset) {
  std::vector<bool> m(n, false);
  for (auto v : subset) m[v] = true;
  return m;
}

WeightedGraph connected_random(std::size_t n, std::uint64_t seed) {
  for (std::uint64_t s = seed;; s += 1000) {
    auto g = weighted_random_graph(n, 0.45, 0.05, 1.0, s);
    if (connected_components(g).component_count == 1) return g;
  }
}
}  // namespace

TEST(Conductance, BridgedTrianglesOneSide) {
  const auto g = oracle::bridged_triangles();
  const std::vector<NodeId> side{0, 1, 2};
  EXPECT_NEAR(oracle::conductance(g, mask_of(6, side)), 1.0 / 7.0, 1e-15);
  EXPECT_NEAR(conductance(g, side), 1.0 / 7.0, 1e-15);
}

TEST(Conductance, ZeroVolumeSideRejected) {
  const WeightedGraph g(4, {{0, 1, 1.0}});
  EXPECT_THROW(conductance(g, std::vector<NodeId>{2, 3}), InvalidArgument);
  EXPECT_THROW(conductance(g, std::vector<NodeId>{0, 1}), InvalidArgument);
}

TEST(Conductance, SubsetPreconditions) {
  const auto g = oracle::bridged_triangles();
  EXPECT_THROW(conductance(g, std::vector<NodeId>{}), InvalidArgument);
  EXPECT_THROW(conductance(g, std::vector<NodeId>{0, 1, 2, 3, 4, 5}), InvalidArgument);
  EXPECT_THROW(conductance(g, std::vector<NodeId>{0, 0}), InvalidArgument);
  EXPECT_THROW(conductance(g, std::vector<NodeId>{9}), InvalidArgument);
}

TEST(Conductance, BinaryModeCountsEdges) {
  WeightedGraph g(3, {{0, 1, 0.5}, {1, 2, 0.25}});
  EXPECT_NEAR(conductance(g, std::vector<NodeId>{0}), 0.5 / 0.5, 1e-15);
  EXPECT_NEAR(conductance(g, std::vector<NodeId>{2}, DegreeMode::binary), 1.0, 1e-15);
  EXPECT_NEAR(conductance(g, std::vector<NodeId>{1}, DegreeMode::binary), 2.0 / 2.0, 1e-15);
}

TEST(Conductance, ComplementSymmetryIsExact) {
  detail::Engine eng(4);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = connected_random(10, seed);
    std::vector<NodeId> side, rest;
    for (NodeId v = 0; v < 10; ++v) (detail::uniform01(eng) < 0.5 ? side : rest).push_back(v);
    if (side.empty() || rest.empty()) continue;
    EXPECT_EQ(conductance(g, side), conductance(g, rest));
    EXPECT_NEAR(conductance(g, side), oracle::conductance(g, mask_of(10, side)), 1e-12);
  }
}

TEST(Conductance, InvariantUnderUniformScaling) {
  const auto g = connected_random(9, 3);
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.w *= 7.25;
  const WeightedGraph h(9, edges);
  const std::vector<NodeId> side{0, 2, 5};
  const double a = conductance(g, side), b = conductance(h, side);
  EXPECT_LE(std::fabs(a - b), 1e-12 * a);
}

TEST(BruteForceCheeger, SingleEdge) {
  const auto c = brute_force_cheeger(WeightedGraph(2, {{0, 1, 1.0}}));
  EXPECT_EQ(c.h, 1.0);
  EXPECT_EQ(c.subset, (std::vector<NodeId>{0}));
}

TEST(BruteForceCheeger, BridgedTriangles) {
  const auto g = oracle::bridged_triangles();
  const auto c = brute_force_cheeger(g);
  EXPECT_NEAR(oracle::cheeger_constant(g), 1.0 / 7.0, 1e-15);
  EXPECT_NEAR(c.h, 1.0 / 7.0, 1e-15);
  EXPECT_EQ(c.subset, (std::vector<NodeId>{0, 1, 2}));
}

TEST(BruteForceCheeger, PathOfFourEdges) {
  const WeightedGraph path(5, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}});
  const double expected = oracle::cheeger_constant(path);
  EXPECT_NEAR(expected, 1.0 / 3.0, 1e-15);  // cut one middle edge, lighter side volume 3
  const auto c = brute_force_cheeger(path);
  EXPECT_NEAR(c.h, expected, 1e-15);
  EXPECT_EQ(c.subset, (std::vector<NodeId>{0, 1}));  // ties with {0,1,2}; lexicographically smaller
}

TEST(BruteForceCheeger, AgreesWithOracleAndBoundsEverySubset) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = connected_random(8, seed);
    const auto c = brute_force_cheeger(g);
    EXPECT_NEAR(c.h, oracle::cheeger_constant(g), 1e-12);
    EXPECT_NEAR(conductance(g, c.subset), c.h, 1e-15);
    for (std::uint32_t mask = 1; mask < 255; ++mask) {
      std::vector<NodeId> side;
      for (NodeId v = 0; v < 8; ++v)
        if (mask >> v & 1U) side.push_back(v);
      EXPECT_GE(conductance(g, side), c.h * (1.0 - 1e-12));
    }
  }
}

TEST(BruteForceCheeger, Errors) {
  EXPECT_THROW(brute_force_cheeger(weighted_random_graph(17, 0.9, 0.1, 1.0, 1)), InvalidArgument);
  EXPECT_THROW(brute_force_cheeger(WeightedGraph(4, {{0, 1, 1.0}, {2, 3, 1.0}})), InvalidArgument);
  EXPECT_THROW(brute_force_cheeger(WeightedGraph(1, {})), InvalidArgument);
}

TEST(ModuleCheeger, DisjointTrianglesAreDegenerate) {
  const auto g = oracle::disjoint_cliques({3, 3});
  const auto p = canonical_partition(std::vector<CommunityId>{0, 0, 0, 1, 1, 1});
  const auto lambda2 = *smallest_eigenvalues(g, 2).lambda2;
  const auto r = module_cheeger(g, p, lambda2);
  EXPECT_EQ(r.h_min, 0.0);
  EXPECT_TRUE(r.degenerate);
  EXPECT_NEAR(r.lambda2, 0.0, 1e-12);
  EXPECT_TRUE(r.bounds_satisfied);
}

TEST(ModuleCheeger, BridgedTrianglesReport) {
  const auto g = oracle::bridged_triangles();
  const auto p = canonical_partition(std::vector<CommunityId>{0, 0, 0, 1, 1, 1});
  const double l2 = *smallest_eigenvalues(g, 2).lambda2;
  const double n2 = *smallest_eigenvalues(g, 2, true).lambda2;
  const auto r = module_cheeger(g, p, l2, n2);
  ASSERT_EQ(r.per_subset.size(), 2u);
  EXPECT_NEAR(r.per_subset[0].h, 1.0 / 7.0, 1e-15);
  EXPECT_EQ(r.per_subset[0].size, 3u);
  EXPECT_EQ(r.h_min, r.per_subset[0].h);
  EXPECT_EQ(r.two_h, 2.0 * r.h_min);
  EXPECT_EQ(r.half_h_sq, r.h_min * r.h_min / 2.0);
  EXPECT_FALSE(r.degenerate);
  ASSERT_TRUE(r.normalized_bounds_satisfied);
  EXPECT_TRUE(*r.normalized_bounds_satisfied);
  EXPECT_EQ(r.bounds_satisfied, 2.0 * r.h_min + 1e-9 >= l2 && l2 + 1e-9 >= r.half_h_sq);
}

TEST(ModuleCheeger, Errors) {
  const auto g = oracle::bridged_triangles();
  EXPECT_THROW(module_cheeger(g, canonical_partition(std::vector<CommunityId>(6, 0)), 0.1), InvalidArgument);
  const WeightedGraph with_isolated(4, {{0, 1, 1.0}, {1, 2, 1.0}});
  EXPECT_THROW(module_cheeger(with_isolated, canonical_partition(std::vector<CommunityId>{0, 0, 0, 1}), 0.0),
               InvalidArgument);
}

TEST(CheegerInequality, ExactConstantBracketsNormalizedFiedler) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto g = connected_random(4 + seed % 8, 50 + seed);
    const double h = brute_force_cheeger(g).h;
    const double l2 = *smallest_eigenvalues(g, 2, true).lambda2;
    EXPECT_TRUE(cheeger_bounds_hold(h, l2, 1e-9)) << "seed " << seed << " h=" << h << " l2=" << l2;
  }
}
