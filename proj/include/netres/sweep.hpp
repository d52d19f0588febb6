#pragma once

// Threshold sweep: for each threshold, erode the source graph and record
// connectivity, modularity, spectrum, module conductances and the rich club.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "netres/cheeger.hpp"
#include "netres/community.hpp"
#include "netres/detail/parallel.hpp"
#include "netres/error.hpp"
#include "netres/graph.hpp"
#include "netres/spectral.hpp"

namespace netres {

inline constexpr double original_threshold = std::numeric_limits<double>::infinity();

/// The original network followed by 0.2, 0.1, 0.09, ..., 0.01.
inline std::vector<double> default_thresholds() {
  return {original_threshold, 0.2, 0.1, 0.09, 0.08, 0.07, 0.06, 0.05, 0.04, 0.03, 0.02, 0.01};
}

struct SweepConfig {
  std::vector<double> thresholds = default_thresholds();
  std::size_t rich_club_size = 21;
  std::size_t track_pool = 50;
  std::uint64_t louvain_seed = 42;
  std::size_t restarts = 10;
  std::size_t laplacian_k = 2;
  ErosionRule rule = ErosionRule::keep_below;
  DegreeMode degree = DegreeMode::weighted;
  SpectrumOptions spectrum;
  std::size_t threads = 1;

  void validate(std::size_t node_count) const {
    if (thresholds.empty()) throw InvalidArgument("sweep needs at least one threshold");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      if (!(thresholds[i] >= 0.0)) throw InvalidArgument("thresholds must be >= 0");
      if (i > 0 && !(thresholds[i] < thresholds[i - 1]))
        throw InvalidArgument("thresholds must be strictly descending");
    }
    if (rich_club_size == 0 || rich_club_size > track_pool || track_pool > node_count)
      throw InvalidArgument("need 0 < rich_club_size <= track_pool <= node_count");
    if (restarts == 0) throw InvalidArgument("restarts must be positive");
    if (laplacian_k < 2) throw InvalidArgument("laplacian_k must be at least 2");
  }
};

struct RankedNode {
  NodeId node;
  double strength;
};

struct ThresholdRecord {
  double threshold = 0.0;
  std::size_t edge_count = 0;
  double total_weight = 0.0;
  std::size_t component_count = 0;
  double giant_fraction = 0.0;
  std::optional<double> q;
  std::optional<std::size_t> community_count;
  std::optional<Partition> partition;
  std::optional<std::vector<double>> eigenvalues;  // smallest laplacian_k, unnormalized
  std::optional<double> lambda2;
  std::optional<double> lambda2_normalized;
  std::optional<std::size_t> zero_count;
  std::optional<ConductanceReport> conductance_report;
  std::vector<RankedNode> rich_club;  // top track_pool by strength, ties by lowest id
  std::map<std::string, std::string> failures;  // field -> reason for null fields
};

/// Top `count` nodes by strength, descending, ties broken by lowest id.
inline std::vector<RankedNode> rank_by_strength(const WeightedGraph& g, std::size_t count,
                                                DegreeMode mode = DegreeMode::weighted) {
  const auto s = strengths(g, mode);
  std::vector<RankedNode> all(s.size());
  for (NodeId v = 0; v < s.size(); ++v) all[v] = {v, s[v]};
  count = std::min(count, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count), all.end(),
                    [](const RankedNode& a, const RankedNode& b) {
                      return a.strength != b.strength ? a.strength > b.strength : a.node < b.node;
                    });
  all.resize(count);
  return all;
}

/// Full analysis of one eroded graph.
inline ThresholdRecord analyze_threshold(const WeightedGraph& source, double threshold, const SweepConfig& cfg) {
  ThresholdRecord r;
  r.threshold = threshold;
  const WeightedGraph g = erode_above(source, threshold, cfg.rule);
  r.edge_count = g.edge_count();
  r.total_weight = g.total_weight();
  const auto components = connected_components(g);
  r.component_count = components.component_count;
  r.giant_fraction = g.node_count() == 0 ? 0.0
                                         : static_cast<double>(components.largest()) /
                                               static_cast<double>(g.node_count());
  r.rich_club = rank_by_strength(g, cfg.track_pool, cfg.degree);

  auto attempt = [&r](const char* field, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      r.failures[field] = e.what();
    }
  };

  if (g.edge_count() == 0) {
    r.failures["q"] = "edgeless graph: modularity undefined";
  } else {
    attempt("q", [&] {
      LouvainOptions opt;
      opt.seed = cfg.louvain_seed;
      opt.restarts = cfg.restarts;
      Partition p = louvain(g, opt);
      r.q = p.q;
      r.community_count = p.community_count;
      r.partition = std::move(p);
    });
  }

  if (g.node_count() >= 2) {
    const std::size_t k = std::min(cfg.laplacian_k, g.node_count());
    attempt("lambda2", [&] {
      auto spec = smallest_eigenvalues(g, k, false, cfg.spectrum);
      r.lambda2 = spec.lambda2;
      r.eigenvalues = std::move(spec.eigenvalues);
    });
    attempt("lambda2_normalized", [&] { r.lambda2_normalized = smallest_eigenvalues(g, 2, true, cfg.spectrum).lambda2; });
  } else {
    r.failures["lambda2"] = "fewer than two nodes";
  }
  attempt("zero_count", [&] { r.zero_count = count_components_spectrally(g, cfg.spectrum); });

  if (!r.partition) {
    r.failures["conductance_report"] = "no partition";
  } else if (!r.lambda2) {
    r.failures["conductance_report"] = "no lambda2";
  } else {
    attempt("conductance_report", [&] {
      r.conductance_report = module_cheeger(g, *r.partition, *r.lambda2, r.lambda2_normalized, cfg.degree);
    });
  }
  return r;
}

/// One record per threshold, in config order. Records are independent and
/// computed on up to cfg.threads workers.
inline std::vector<ThresholdRecord> run_sweep(const WeightedGraph& g, const SweepConfig& cfg) {
  if (g.node_count() == 0) throw InvalidArgument("sweep needs a non-empty graph");
  cfg.validate(g.node_count());
  std::vector<ThresholdRecord> records(cfg.thresholds.size());
  detail::parallel_for(records.size(), cfg.threads,
                       [&](std::size_t i) { records[i] = analyze_threshold(g, cfg.thresholds[i], cfg); });
  return records;
}

struct ClubMembership {
  double threshold = 0.0;
  std::vector<NodeId> members;       // top rich_club_size, ranked
  std::vector<RankedNode> tracked;   // top track_pool, ranked
  bool degenerate = false;           // fewer than rich_club_size nodes with non-zero strength
};

enum class ClubEventKind { entered, exited };

struct ClubEvent {
  NodeId node;
  double threshold;
  ClubEventKind kind;
};

struct RichClubTrace {
  std::vector<NodeId> baseline;  // club at the first (loosest) threshold
  std::vector<ClubMembership> per_threshold;
  std::vector<ClubEvent> events;  // by threshold order, then node id

  /// Strength of `node` at threshold index i, or nothing when it is outside
  /// the tracked pool there.
  std::optional<double> tracked_strength(std::size_t i, NodeId node) const {
    for (const auto& t : per_threshold[i].tracked)
      if (t.node == node) return t.strength;
    return std::nullopt;
  }
};

/// Membership of the top rich_club_size set per record, with entry/exit
/// events between consecutive thresholds.
inline RichClubTrace rich_club_trace(const std::vector<ThresholdRecord>& records, const SweepConfig& cfg) {
  if (records.empty()) throw InvalidArgument("rich club trace needs at least one record");
  RichClubTrace trace;
  for (const auto& r : records) {
    if (r.rich_club.size() < cfg.rich_club_size)
      throw InvalidArgument("record ranks fewer nodes than rich_club_size");
    ClubMembership m;
    m.threshold = r.threshold;
    m.tracked = r.rich_club;
    std::size_t positive = 0;
    for (std::size_t i = 0; i < cfg.rich_club_size; ++i) {
      m.members.push_back(r.rich_club[i].node);
      positive += static_cast<std::size_t>(r.rich_club[i].strength > 0.0);
    }
    m.degenerate = positive < cfg.rich_club_size;
    trace.per_threshold.push_back(std::move(m));
  }
  trace.baseline = trace.per_threshold.front().members;
  for (std::size_t i = 1; i < trace.per_threshold.size(); ++i) {
    const std::set<NodeId> before(trace.per_threshold[i - 1].members.begin(), trace.per_threshold[i - 1].members.end());
    const std::set<NodeId> after(trace.per_threshold[i].members.begin(), trace.per_threshold[i].members.end());
    const double t = trace.per_threshold[i].threshold;
    std::vector<ClubEvent> step;
    for (NodeId v : before)
      if (!after.contains(v)) step.push_back({v, t, ClubEventKind::exited});
    for (NodeId v : after)
      if (!before.contains(v)) step.push_back({v, t, ClubEventKind::entered});
    std::sort(step.begin(), step.end(), [](const ClubEvent& a, const ClubEvent& b) { return a.node < b.node; });
    trace.events.insert(trace.events.end(), step.begin(), step.end());
  }
  return trace;
}

/// Largest threshold whose giant fraction is below the cutoff.
inline std::optional<double> detect_breakdown(const std::vector<ThresholdRecord>& records, double giant_cutoff = 0.5) {
  for (std::size_t i = 1; i < records.size(); ++i)
    if (!(records[i].threshold < records[i - 1].threshold))
      throw InvalidArgument("records must be ordered by descending threshold");
  for (const auto& r : records)
    if (r.giant_fraction < giant_cutoff) return r.threshold;
  return std::nullopt;
}

}  // namespace netres
