#pragma once

// Synthetic weighted networks with known ground truth.
//
// All generators draw from std::mt19937_64 seeded with the given seed. Pairs
// (i, j), i < j, are visited in lexicographic order; each pair consumes one
// draw for the edge test (uniform01 < p) and, if the edge exists, one draw for
// its weight, lo + (hi - lo) * uniform01. Point-mass intervals (lo == hi)
// consume no weight draw.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "netres/community.hpp"
#include "netres/detail/rng.hpp"
#include "netres/error.hpp"
#include "netres/graph.hpp"

namespace netres {

/// Half-open [lo, hi) weight interval, or a point mass when lo == hi.
struct WeightRange {
  double lo = 1.0;
  double hi = 1.0;
};

struct PlantedPartitionSpec {
  std::vector<std::size_t> block_sizes;
  double p_in = 1.0;
  double p_out = 0.0;
  WeightRange w_in;
  WeightRange w_out;
  std::uint64_t seed = 0;
};

struct PlantedGraph {
  WeightedGraph graph;
  Partition planted;
};

namespace detail {

inline void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
}

inline void check_range(const WeightRange& r, const char* name) {
  if (!(r.lo > 0.0) || !(r.hi >= r.lo) || !std::isfinite(r.hi))
    throw InvalidArgument(std::string(name) + " needs 0 < lo <= hi");
}

inline double draw_weight(Engine& eng, const WeightRange& r) {
  if (r.lo == r.hi) return r.lo;
  const double w = r.lo + (r.hi - r.lo) * uniform01(eng);
  return w < r.hi ? w : r.lo;  // rounding can land on hi; keep the interval half-open
}

inline std::vector<CommunityId> block_labels(const std::vector<std::size_t>& sizes) {
  std::vector<CommunityId> labels;
  for (std::size_t b = 0; b < sizes.size(); ++b) labels.insert(labels.end(), sizes[b], static_cast<CommunityId>(b));
  return labels;
}

inline void validate(const PlantedPartitionSpec& spec) {
  if (spec.block_sizes.empty()) throw InvalidArgument("planted partition needs at least one block");
  for (auto s : spec.block_sizes)
    if (s == 0) throw InvalidArgument("block sizes must be positive");
  check_probability(spec.p_in, "p_in");
  check_probability(spec.p_out, "p_out");
  check_range(spec.w_in, "w_in");
  check_range(spec.w_out, "w_out");
}

inline WeightedGraph draw_blocks(const PlantedPartitionSpec& spec, const std::vector<CommunityId>& labels,
                                 const WeightRange& w_in, const WeightRange& w_out) {
  Engine eng(spec.seed);
  const std::size_t n = labels.size();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same = labels[i] == labels[j];
      if (uniform01(eng) < (same ? spec.p_in : spec.p_out))
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), draw_weight(eng, same ? w_in : w_out)});
    }
  }
  return WeightedGraph(n, std::move(edges));
}

inline bool guaranteed_edgeless(const PlantedPartitionSpec& spec) {
  bool intra_pairs = false;
  for (auto s : spec.block_sizes) intra_pairs |= s >= 2;
  const bool inter_pairs = spec.block_sizes.size() >= 2;
  return !(intra_pairs && spec.p_in > 0.0) && !(inter_pairs && spec.p_out > 0.0);
}

// Giant-component fraction by breadth-first search. Kept separate from the
// union-find in graph.hpp so generated ground truth does not share code with
// the path it is used to check.
inline double giant_fraction_bfs(const WeightedGraph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return 0.0;
  std::vector<char> seen(n, 0);
  std::size_t largest = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::size_t size = 0;
    std::queue<NodeId> frontier;
    frontier.push(static_cast<NodeId>(s));
    seen[s] = 1;
    while (!frontier.empty()) {
      const NodeId v = frontier.front();
      frontier.pop();
      ++size;
      for (const auto& nb : g.neighbors(v))
        if (!seen[nb.node]) {
          seen[nb.node] = 1;
          frontier.push(nb.node);
        }
    }
    largest = std::max(largest, size);
  }
  return static_cast<double>(largest) / static_cast<double>(n);
}

}  // namespace detail

/// Independent edges with probability p_in inside blocks and p_out across.
/// Returns the planted labels with their modularity.
inline PlantedGraph planted_partition(const PlantedPartitionSpec& spec) {
  detail::validate(spec);
  if (detail::guaranteed_edgeless(spec)) throw InvalidArgument("planted partition spec can produce no edges");
  const auto labels = detail::block_labels(spec.block_sizes);
  PlantedGraph out{detail::draw_blocks(spec, labels, spec.w_in, spec.w_out), canonical_partition(labels)};
  if (out.graph.edge_count() == 0) throw InvalidArgument("planted partition draw produced no edges");
  out.planted.q = modularity(out.graph, out.planted);
  return out;
}

inline WeightedGraph weighted_random_graph(std::size_t n, double p, double weight_lo, double weight_hi,
                                           std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("random graph needs at least one node");
  detail::check_probability(p, "p");
  detail::check_range({weight_lo, weight_hi}, "weight range");
  detail::Engine eng(seed);
  std::vector<Edge> edges;
  const WeightRange range{weight_lo, weight_hi};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (detail::uniform01(eng) < p)
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), detail::draw_weight(eng, range)});
  return WeightedGraph(n, std::move(edges));
}

struct StrataGraph {
  WeightedGraph graph;
  Partition planted;
  /// Largest threshold at which the giant fraction under keep-w<=t erosion
  /// drops below the cutoff; +inf if the intact graph is already below it,
  /// empty if the graph never breaks down.
  std::optional<double> breakdown_threshold;
};

/// Planted blocks whose intra edges all weigh `intra_weight` and inter edges
/// `inter_weight`. Under keep-w<=t erosion the graph passes through three
/// regimes: intact (t >= heavy), light stratum only (light <= t < heavy) and
/// edgeless (t < light). The breakdown threshold is the upper end of the
/// first broken regime: +inf, the double just below `heavy`, or the double
/// just below `light`.
inline StrataGraph strata_graph(const PlantedPartitionSpec& spec, double intra_weight, double inter_weight,
                                double giant_cutoff = 0.5) {
  detail::validate(spec);
  if (!(intra_weight > 0.0) || !(inter_weight > 0.0)) throw InvalidArgument("strata weights must be positive");
  if (intra_weight == inter_weight) throw InvalidArgument("strata weights must differ to define a transition");
  const auto labels = detail::block_labels(spec.block_sizes);
  StrataGraph out{detail::draw_blocks(spec, labels, {intra_weight, intra_weight}, {inter_weight, inter_weight}),
                  canonical_partition(labels), std::nullopt};
  if (out.graph.edge_count() > 0) out.planted.q = modularity(out.graph, out.planted);

  const double heavy = std::max(intra_weight, inter_weight);
  const double light = std::min(intra_weight, inter_weight);
  auto below = [](double x) { return std::nextafter(x, 0.0); };
  auto lighter_than = [&](double level) {
    std::vector<Edge> kept;
    for (const auto& e : out.graph.edges())
      if (e.w < level) kept.push_back(e);
    return WeightedGraph(out.graph.node_count(), std::move(kept));
  };
  if (detail::giant_fraction_bfs(out.graph) < giant_cutoff) {
    out.breakdown_threshold = std::numeric_limits<double>::infinity();
  } else if (detail::giant_fraction_bfs(lighter_than(heavy)) < giant_cutoff) {
    out.breakdown_threshold = below(heavy);
  } else if (detail::giant_fraction_bfs(lighter_than(light)) < giant_cutoff) {
    out.breakdown_threshold = below(light);
  }
  return out;
}

}  // namespace netres
