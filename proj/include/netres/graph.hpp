#pragma once

// Weighted undirected graph storage, strength, threshold erosion,
// union-find components and edge-weight histograms.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netres/error.hpp"

namespace netres {

/// Dense node index in [0, node_count).
using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
  double w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node;
  double w;
};

using Position = std::array<double, 3>;

/// Which notion of degree sums over incident edges.
enum class DegreeMode { weighted, binary };

/// Erosion direction. keep_below removes every edge with w > t; keep_above is
/// the conventional opposite sweep and removes every edge with w < t.
enum class ErosionRule { keep_below, keep_above };

/// Immutable undirected weighted graph. Edges are stored canonically with
/// u < v, sorted by (u, v); adjacency is kept in CSR form.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Validates the invariants: ids in range, no self-loops, one edge per
  /// unordered pair, finite weights > 0. Throws InvalidGraph otherwise.
  WeightedGraph(std::size_t node_count, std::vector<Edge> edges)
      : node_count_(node_count), edges_(std::move(edges)) {
    for (auto& e : edges_) {
      if (e.u >= node_count_ || e.v >= node_count_)
        throw InvalidGraph("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                           ") references a node outside [0, " + std::to_string(node_count_) + ")");
      if (e.u == e.v) throw InvalidGraph("self-loop on node " + std::to_string(e.u));
      if (!(e.w > 0.0) || !std::isfinite(e.w))
        throw InvalidGraph("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                           ") has non-positive or non-finite weight");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
        throw InvalidGraph("duplicate edge (" + std::to_string(edges_[i].u) + ", " +
                           std::to_string(edges_[i].v) + ")");
    }
    build_adjacency();
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(NodeId node) const {
    return std::span<const Neighbor>(adjacency_).subspan(offsets_[node], offsets_[node + 1] - offsets_[node]);
  }

  double total_weight() const noexcept {
    double sum = 0.0;
    for (const auto& e : edges_) sum += e.w;
    return sum;
  }

  double max_weight() const noexcept {
    double best = 0.0;
    for (const auto& e : edges_) best = std::max(best, e.w);
    return best;
  }

  const std::optional<std::vector<Position>>& positions() const noexcept { return positions_; }
  const std::optional<std::vector<std::string>>& labels() const noexcept { return labels_; }

  WeightedGraph with_positions(std::vector<Position> positions) const {
    if (positions.size() != node_count_) throw InvalidGraph("positions must cover every node");
    WeightedGraph g = *this;
    g.positions_ = std::move(positions);
    return g;
  }

  WeightedGraph with_labels(std::vector<std::string> labels) const {
    if (labels.size() != node_count_) throw InvalidGraph("labels must cover every node");
    WeightedGraph g = *this;
    g.labels_ = std::move(labels);
    return g;
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  void build_adjacency() {
    offsets_.assign(node_count_ + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
      adjacency_[cursor[e.u]++] = {e.v, e.w};
      adjacency_[cursor[e.v]++] = {e.u, e.w};
    }
  }

  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::optional<std::vector<Position>> positions_;
  std::optional<std::vector<std::string>> labels_;
};

inline void check_node(const WeightedGraph& g, NodeId node) {
  if (node >= g.node_count())
    throw InvalidArgument("node id " + std::to_string(node) + " out of range for " +
                          std::to_string(g.node_count()) + " nodes");
}

/// Weighted degree (sum of incident weights), or incident edge count in
/// binary mode.
inline double strength(const WeightedGraph& g, NodeId node, DegreeMode mode = DegreeMode::weighted) {
  check_node(g, node);
  double sum = 0.0;
  for (const auto& nb : g.neighbors(node)) sum += mode == DegreeMode::weighted ? nb.w : 1.0;
  return sum;
}

inline std::vector<double> strengths(const WeightedGraph& g, DegreeMode mode = DegreeMode::weighted) {
  std::vector<double> out(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) out[v] = strength(g, v, mode);
  return out;
}

/// New graph on the same node set keeping edges with w <= t (keep_below) or
/// w >= t (keep_above). Positions and labels carry over.
inline WeightedGraph erode_above(const WeightedGraph& g, double t,
                                 ErosionRule rule = ErosionRule::keep_below) {
  if (!(t >= 0.0)) throw InvalidArgument("erosion threshold must be >= 0");
  std::vector<Edge> kept;
  for (const auto& e : g.edges()) {
    const bool keep = rule == ErosionRule::keep_below ? e.w <= t : e.w >= t;
    if (keep) kept.push_back(e);
  }
  WeightedGraph out(g.node_count(), std::move(kept));
  if (g.positions()) out = out.with_positions(*g.positions());
  if (g.labels()) out = out.with_labels(*g.labels());
  return out;
}

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

struct ComponentLabeling {
  std::vector<std::uint32_t> labels;  // component id per node, numbered by first node
  std::size_t component_count = 0;
  std::vector<std::size_t> component_sizes;

  std::size_t largest() const {
    return component_sizes.empty() ? 0 : *std::max_element(component_sizes.begin(), component_sizes.end());
  }
};

inline ComponentLabeling connected_components(const WeightedGraph& g) {
  DisjointSets sets(g.node_count());
  for (const auto& e : g.edges()) sets.unite(e.u, e.v);

  ComponentLabeling out;
  out.labels.resize(g.node_count());
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> root_label(g.node_count(), unset);
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    auto& label = root_label[sets.find(v)];
    if (label == unset) {
      label = static_cast<std::uint32_t>(out.component_count++);
      out.component_sizes.push_back(0);
    }
    out.labels[v] = label;
    ++out.component_sizes[label];
  }
  return out;
}

struct WeightHistogram {
  std::vector<double> bin_edges;  // bins + 1 ascending edges, first 0, last max weight
  std::vector<std::size_t> counts;
};

/// Equal-width histogram over [0, max weight]. Bins are right-closed,
/// (e_i, e_{i+1}], so the maximum weight always lands in the final bin.
inline WeightHistogram weight_histogram(const WeightedGraph& g, std::size_t bins) {
  if (bins < 1) throw InvalidArgument("histogram needs at least one bin");
  if (g.edge_count() == 0) throw InvalidArgument("edgeless graph has no weight distribution");
  const double top = g.max_weight();
  WeightHistogram h;
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) h.bin_edges[i] = top * static_cast<double>(i) / static_cast<double>(bins);
  h.bin_edges.back() = top;
  h.counts.assign(bins, 0);
  for (const auto& e : g.edges()) {
    auto it = std::lower_bound(h.bin_edges.begin() + 1, h.bin_edges.end(), e.w);
    if (it == h.bin_edges.end()) --it;
    ++h.counts[static_cast<std::size_t>(it - h.bin_edges.begin()) - 1];
  }
  return h;
}

}  // namespace netres
