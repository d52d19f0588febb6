#pragma once

// Newman modularity on weighted graphs, a seeded multi-level Louvain
// maximizer, and an exhaustive small-graph optimum used as a test oracle.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "netres/detail/parallel.hpp"
#include "netres/detail/rng.hpp"
#include "netres/error.hpp"
#include "netres/graph.hpp"

namespace netres {

using CommunityId = std::uint32_t;

struct Partition {
  std::vector<CommunityId> assignment;
  std::size_t community_count = 0;
  double q = 0.0;

  std::vector<std::vector<NodeId>> members() const {
    std::vector<std::vector<NodeId>> out(community_count);
    for (NodeId v = 0; v < assignment.size(); ++v) out[assignment[v]].push_back(v);
    return out;
  }
};

/// Relabels communities densely in order of first appearance. Two
/// assignments describe the same partition iff their canonical forms match.
inline Partition canonical_partition(std::span<const CommunityId> raw) {
  Partition p;
  p.assignment.resize(raw.size());
  constexpr auto unset = std::numeric_limits<CommunityId>::max();
  std::vector<CommunityId> lookup;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] >= lookup.size()) lookup.resize(static_cast<std::size_t>(raw[i]) + 1, unset);
    auto& dense = lookup[raw[i]];
    if (dense == unset) dense = static_cast<CommunityId>(p.community_count++);
    p.assignment[i] = dense;
  }
  return p;
}

inline Partition singleton_partition(std::size_t n) {
  std::vector<CommunityId> a(n);
  std::iota(a.begin(), a.end(), CommunityId{0});
  return canonical_partition(a);
}

/// Q = sum_c [ in_c / 2m - (tot_c / 2m)^2 ], resolution 1. in_c counts each
/// intra-community edge twice, tot_c is the summed strength of c.
inline double modularity(const WeightedGraph& g, std::span<const CommunityId> assignment) {
  if (assignment.size() != g.node_count()) throw InvalidArgument("assignment does not cover every node");
  if (g.edge_count() == 0) throw InvalidArgument("modularity is undefined on an edgeless graph");
  const CommunityId top = *std::max_element(assignment.begin(), assignment.end());
  std::vector<double> in(static_cast<std::size_t>(top) + 1, 0.0);
  std::vector<double> tot(in.size(), 0.0);
  double two_m = 0.0;
  for (const auto& e : g.edges()) {
    two_m += 2.0 * e.w;
    tot[assignment[e.u]] += e.w;
    tot[assignment[e.v]] += e.w;
    if (assignment[e.u] == assignment[e.v]) in[assignment[e.u]] += 2.0 * e.w;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < in.size(); ++c) q += in[c] / two_m - (tot[c] / two_m) * (tot[c] / two_m);
  return q;
}

inline double modularity(const WeightedGraph& g, const Partition& p) { return modularity(g, p.assignment); }

namespace detail {

// Graph at one Louvain level. Self-loop weight is the diagonal entry A_ii,
// which already counts internal edges of the collapsed community in both
// directions, so k_i = A_ii + sum_{j != i} A_ij.
struct LevelGraph {
  std::size_t n = 0;
  std::vector<std::size_t> offsets;
  std::vector<NodeId> targets;
  std::vector<double> weights;
  std::vector<double> self;
  std::vector<double> k;
  double two_m = 0.0;

  static LevelGraph from(const WeightedGraph& g) {
    LevelGraph lg;
    lg.n = g.node_count();
    lg.offsets.assign(lg.n + 1, 0);
    lg.self.assign(lg.n, 0.0);
    lg.k.assign(lg.n, 0.0);
    for (NodeId v = 0; v < lg.n; ++v) {
      for (const auto& nb : g.neighbors(v)) {
        lg.targets.push_back(nb.node);
        lg.weights.push_back(nb.w);
        lg.k[v] += nb.w;
      }
      lg.offsets[v + 1] = lg.targets.size();
      lg.two_m += lg.k[v];
    }
    return lg;
  }

  double quality(std::span<const CommunityId> comm) const {
    std::vector<double> in(n, 0.0), tot(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      tot[comm[i]] += k[i];
      in[comm[i]] += self[i];
      for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e)
        if (comm[targets[e]] == comm[i]) in[comm[i]] += weights[e];
    }
    double q = 0.0;
    for (std::size_t c = 0; c < n; ++c) q += in[c] / two_m - (tot[c] / two_m) * (tot[c] / two_m);
    return q;
  }

  // Collapses every community (dense ids in [0, count)) into one node.
  LevelGraph aggregate(std::span<const CommunityId> comm, std::size_t count) const {
    LevelGraph out;
    out.n = count;
    out.self.assign(count, 0.0);
    out.k.assign(count, 0.0);
    out.offsets.assign(count + 1, 0);
    out.two_m = two_m;
    std::vector<std::vector<NodeId>> by_comm(count);
    for (std::size_t i = 0; i < n; ++i) by_comm[comm[i]].push_back(static_cast<NodeId>(i));
    std::vector<double> acc(count, 0.0);
    std::vector<NodeId> touched;
    for (std::size_t c = 0; c < count; ++c) {
      touched.clear();
      for (NodeId i : by_comm[c]) {
        out.self[c] += self[i];
        out.k[c] += k[i];
        for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
          const CommunityId d = comm[targets[e]];
          if (d == c) {
            out.self[c] += weights[e];
          } else {
            if (acc[d] == 0.0) touched.push_back(d);
            acc[d] += weights[e];
          }
        }
      }
      std::sort(touched.begin(), touched.end());
      for (NodeId d : touched) {
        out.targets.push_back(d);
        out.weights.push_back(acc[d]);
        acc[d] = 0.0;
      }
      out.offsets[c + 1] = out.targets.size();
    }
    return out;
  }
};

// Local moving phase. Returns the number of node moves over all passes.
inline std::size_t local_moving(const LevelGraph& lg, std::vector<CommunityId>& comm, Engine& eng,
                                double min_gain) {
  std::vector<double> tot(lg.k);
  std::vector<NodeId> order(lg.n);
  std::iota(order.begin(), order.end(), NodeId{0});
  shuffle(std::span<NodeId>(order), eng);

  std::vector<double> link(lg.n, 0.0);
  std::vector<CommunityId> touched;
  std::size_t total_moves = 0;
  double q = lg.quality(comm);
  for (;;) {
    std::size_t moves = 0;
    for (NodeId i : order) {
      const CommunityId own = comm[i];
      touched.clear();
      touched.push_back(own);
      link[own] = 0.0;  // marks `own` as touched even when no link into it
      for (std::size_t e = lg.offsets[i]; e < lg.offsets[i + 1]; ++e) {
        const CommunityId c = comm[lg.targets[e]];
        if (link[c] == 0.0 && c != own) touched.push_back(c);
        link[c] += lg.weights[e];
      }
      const double ki = lg.k[i];
      tot[own] -= ki;
      CommunityId best = own;
      double best_gain = link[own] - tot[own] * ki / lg.two_m;
      for (CommunityId c : touched) {
        const double gain = link[c] - tot[c] * ki / lg.two_m;
        if (gain > best_gain) {
          best_gain = gain;
          best = c;
        }
      }
      tot[best] += ki;
      comm[i] = best;
      if (best != own) ++moves;
      for (CommunityId c : touched) link[c] = 0.0;
    }
    total_moves += moves;
    const double next_q = lg.quality(comm);
    const double gain = next_q - q;
    q = next_q;
    if (moves == 0 || gain <= min_gain) break;
  }
  return total_moves;
}

inline Partition louvain_once(const WeightedGraph& g, std::uint64_t seed, double min_gain) {
  Engine eng(seed);
  LevelGraph lg = LevelGraph::from(g);
  std::vector<CommunityId> membership(g.node_count());
  std::iota(membership.begin(), membership.end(), CommunityId{0});
  for (;;) {
    std::vector<CommunityId> comm(lg.n);
    std::iota(comm.begin(), comm.end(), CommunityId{0});
    const double before = lg.quality(comm);
    const std::size_t moves = local_moving(lg, comm, eng, min_gain);
    if (moves == 0) break;
    const double after = lg.quality(comm);
    if (!(after > before)) break;
    comm = canonical_partition(comm).assignment;
    const std::size_t count = 1 + *std::max_element(comm.begin(), comm.end());
    for (auto& m : membership) m = comm[m];
    lg = lg.aggregate(comm, count);
    if (after - before <= min_gain || count == 1) break;
  }
  Partition p = canonical_partition(membership);
  p.q = modularity(g, p);
  return p;
}

}  // namespace detail

struct LouvainOptions {
  std::uint64_t seed = 42;
  std::size_t restarts = 10;
  double min_gain = 1e-10;
  std::size_t threads = 1;
};

/// Multi-level Louvain (local moving + aggregation) with a seeded shuffled
/// visitation order. Returns the best of `restarts` runs by Q; equal Q falls
/// back to the lexicographically smallest canonical assignment, so the result
/// does not depend on the thread count.
inline Partition louvain(const WeightedGraph& g, const LouvainOptions& opt = {}) {
  if (g.edge_count() == 0) throw InvalidArgument("louvain needs at least one edge");
  if (opt.restarts == 0) throw InvalidArgument("louvain needs at least one restart");
  std::vector<Partition> runs(opt.restarts);
  detail::parallel_for(opt.restarts, opt.threads, [&](std::size_t r) {
    runs[r] = detail::louvain_once(g, detail::splitmix64(opt.seed + r), opt.min_gain);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].q > runs[best].q || (runs[r].q == runs[best].q && runs[r].assignment < runs[best].assignment))
      best = r;
  }
  return std::move(runs[best]);
}

inline Partition louvain(const WeightedGraph& g, std::uint64_t seed, std::size_t restarts) {
  LouvainOptions opt;
  opt.seed = seed;
  opt.restarts = restarts;
  return louvain(g, opt);
}

inline constexpr std::size_t exhaustive_partition_limit = 12;

/// Enumerates every set partition as a restricted growth string in
/// lexicographic order (all-in-one first) and returns the argmax of Q.
/// Partitions whose Q is within 1e-13 of the incumbent count as ties and the
/// earlier one is kept.
inline Partition exhaustive_best_partition(const WeightedGraph& g) {
  const std::size_t n = g.node_count();
  if (n > exhaustive_partition_limit)
    throw InvalidArgument("exhaustive search supports at most " + std::to_string(exhaustive_partition_limit) +
                          " nodes");
  if (g.edge_count() == 0) throw InvalidArgument("modularity is undefined on an edgeless graph");

  const auto s = strengths(g);
  const double two_m = 2.0 * g.total_weight();
  std::vector<CommunityId> rgs(n, 0);
  std::vector<CommunityId> prefix_max(n, 0);  // max of rgs[0..i]
  std::vector<double> in(n), tot(n);

  auto score = [&] {
    std::fill(in.begin(), in.end(), 0.0);
    std::fill(tot.begin(), tot.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v) tot[rgs[v]] += s[v];
    for (const auto& e : g.edges())
      if (rgs[e.u] == rgs[e.v]) in[rgs[e.u]] += 2.0 * e.w;
    double q = 0.0;
    for (std::size_t c = 0; c < n; ++c) q += in[c] / two_m - (tot[c] / two_m) * (tot[c] / two_m);
    return q;
  };

  std::vector<CommunityId> best = rgs;
  double best_q = score();
  while (n >= 2) {
    // Next restricted growth string: bump the rightmost position that can grow.
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
    const double q = score();
    if (q > best_q + 1e-13) {
      best_q = q;
      best = rgs;
    }
  }
  Partition p = canonical_partition(best);
  p.q = modularity(g, p);
  return p;
}

}  // namespace netres
