#pragma once

// Conductance of vertex subsets, the module-minimum approximation of the
// Cheeger constant, Cheeger-inequality checks, and the exact constant by
// exhaustive search on small graphs.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netres/community.hpp"
#include "netres/error.hpp"
#include "netres/graph.hpp"

namespace netres {

namespace detail {

// Cut weight over volume of the lighter side, for a membership mask. Both
// volumes are accumulated in node order so h(V) == h(V') bit for bit.
inline double conductance_of_mask(const WeightedGraph& g, const std::vector<char>& inside,
                                  std::span<const double> degree, DegreeMode mode) {
  double cut = 0.0;
  for (const auto& e : g.edges())
    if (inside[e.u] != inside[e.v]) cut += mode == DegreeMode::weighted ? e.w : 1.0;
  double vol_in = 0.0, vol_out = 0.0;
  for (std::size_t v = 0; v < g.node_count(); ++v) (inside[v] ? vol_in : vol_out) += degree[v];
  const double vol = std::min(vol_in, vol_out);
  if (!(vol > 0.0)) throw InvalidArgument("conductance undefined: one side has zero volume");
  return cut / vol;
}

}  // namespace detail

/// h(V) = w(E(V, V')) / min(vol V, vol V'), volumes from weighted strengths
/// (or edge counts in binary mode, where the cut also counts edges).
inline double conductance(const WeightedGraph& g, std::span<const NodeId> subset,
                          DegreeMode mode = DegreeMode::weighted) {
  std::vector<char> inside(g.node_count(), 0);
  for (NodeId v : subset) {
    check_node(g, v);
    if (inside[v]) throw InvalidArgument("subset lists node " + std::to_string(v) + " twice");
    inside[v] = 1;
  }
  if (subset.empty()) throw InvalidArgument("conductance needs a non-empty subset");
  if (subset.size() == g.node_count()) throw InvalidArgument("conductance needs a proper subset");
  const auto degree = strengths(g, mode);
  return detail::conductance_of_mask(g, inside, degree, mode);
}

struct SubsetConductance {
  std::string label;
  std::size_t size = 0;
  double h = 0.0;
};

/// Module conductances against the Cheeger bounds 2h >= lambda2 >= h^2/2.
/// `bounds_satisfied` uses the unnormalized lambda2; when the normalized
/// lambda2 is supplied it is checked separately.
struct ConductanceReport {
  std::vector<SubsetConductance> per_subset;
  double h_min = 0.0;
  double two_h = 0.0;
  double half_h_sq = 0.0;
  double lambda2 = 0.0;
  bool bounds_satisfied = false;
  std::optional<double> lambda2_normalized;
  std::optional<bool> normalized_bounds_satisfied;
  bool degenerate = false;  // zero cut: some module is a union of components
};

inline bool cheeger_bounds_hold(double h, double lambda2, double slack) {
  return 2.0 * h + slack >= lambda2 && lambda2 + slack >= h * h / 2.0;
}

inline ConductanceReport module_cheeger(const WeightedGraph& g, const Partition& p, double lambda2,
                                        std::optional<double> lambda2_normalized = std::nullopt,
                                        DegreeMode mode = DegreeMode::weighted, double slack = 1e-9) {
  if (p.assignment.size() != g.node_count()) throw InvalidArgument("partition does not cover every node");
  if (p.community_count < 2) throw InvalidArgument("module conductance needs at least two communities");
  const auto degree = strengths(g, mode);
  ConductanceReport r;
  std::vector<char> inside(g.node_count());
  for (CommunityId c = 0; c < p.community_count; ++c) {
    std::size_t size = 0;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      inside[v] = p.assignment[v] == c;
      size += static_cast<std::size_t>(inside[v]);
    }
    double h = 0.0;
    try {
      h = detail::conductance_of_mask(g, inside, degree, mode);
    } catch (const InvalidArgument&) {
      throw InvalidArgument("module " + std::to_string(c) + " has zero volume on one side of its cut");
    }
    r.per_subset.push_back({"module " + std::to_string(c), size, h});
    if (c == 0 || h < r.h_min) r.h_min = h;
  }
  r.two_h = 2.0 * r.h_min;
  r.half_h_sq = r.h_min * r.h_min / 2.0;
  r.lambda2 = lambda2;
  r.bounds_satisfied = cheeger_bounds_hold(r.h_min, lambda2, slack);
  if (lambda2_normalized) {
    r.lambda2_normalized = lambda2_normalized;
    r.normalized_bounds_satisfied = cheeger_bounds_hold(r.h_min, *lambda2_normalized, slack);
  }
  r.degenerate = r.h_min == 0.0;
  return r;
}

struct ExactCheeger {
  double h = 0.0;
  std::vector<NodeId> subset;  // sorted; always contains node 0
};

inline constexpr std::size_t brute_force_cheeger_limit = 16;

/// Minimum conductance over all 2^(n-1) - 1 cuts. Each cut is represented by
/// its side containing node 0, which is the lexicographically smaller of the
/// two sides; ties within 1e-12 relative keep the lexicographically smallest.
inline ExactCheeger brute_force_cheeger(const WeightedGraph& g, DegreeMode mode = DegreeMode::weighted) {
  const std::size_t n = g.node_count();
  if (n > brute_force_cheeger_limit)
    throw InvalidArgument("exact Cheeger search supports at most " + std::to_string(brute_force_cheeger_limit) +
                          " nodes");
  if (n < 2) throw InvalidArgument("Cheeger constant needs at least two nodes");
  if (connected_components(g).component_count != 1) throw InvalidArgument("exact Cheeger search needs a connected graph");

  const auto degree = strengths(g, mode);
  auto as_set = [n](std::uint32_t mask) {
    std::vector<NodeId> out;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1U) out.push_back(static_cast<NodeId>(v));
    return out;
  };

  std::vector<char> inside(n);
  const std::uint32_t full = (n == 32 ? 0U : (1U << n)) - 1U;
  std::optional<std::uint32_t> best_mask;
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < full; mask += 2) {  // odd masks: node 0 inside
    for (std::size_t v = 0; v < n; ++v) inside[v] = static_cast<char>(mask >> v & 1U);
    const double h = detail::conductance_of_mask(g, inside, degree, mode);
    if (!best_mask || h < best * (1.0 - 1e-12)) {
      best = h;
      best_mask = mask;
    } else if (h <= best * (1.0 + 1e-12) && as_set(mask) < as_set(*best_mask)) {
      best = h;
      best_mask = mask;
    }
  }
  return {best, as_set(*best_mask)};
}

}  // namespace netres
