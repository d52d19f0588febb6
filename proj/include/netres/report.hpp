#pragma once

// JSON and CSV projections of analysis results.

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>

#include <json.hpp>

#include "netres/cheeger.hpp"
#include "netres/community.hpp"
#include "netres/error.hpp"
#include "netres/graph.hpp"
#include "netres/io.hpp"
#include "netres/spectral.hpp"
#include "netres/sweep.hpp"

namespace netres {

using Json = nlohmann::ordered_json;

/// Infinite thresholds (the original network) serialize as "original".
inline Json threshold_json(double t) { return std::isinf(t) ? Json("original") : Json(t); }

inline std::string threshold_text(double t) { return std::isinf(t) ? "original" : format_real(t); }

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline Json to_json(const LaplacianSpectrum& s) {
  return Json{{"normalized", s.normalized},
              {"k", s.eigenvalues.size()},
              {"eigenvalues", s.eigenvalues},
              {"zero_count", s.zero_count},
              {"lambda2", optional_json(s.lambda2)}};
}

inline Json to_json(const ConductanceReport& r) {
  Json modules = Json::array();
  for (const auto& m : r.per_subset) modules.push_back(Json{{"label", m.label}, {"size", m.size}, {"h", m.h}});
  return Json{{"modules", modules},
              {"h_min", r.h_min},
              {"two_h", r.two_h},
              {"lambda2", r.lambda2},
              {"half_h_sq", r.half_h_sq},
              {"bounds_satisfied", r.bounds_satisfied},
              {"lambda2_normalized", optional_json(r.lambda2_normalized)},
              {"normalized_bounds_satisfied", optional_json(r.normalized_bounds_satisfied)},
              {"degenerate", r.degenerate}};
}

inline Json to_json(const ExactCheeger& c) { return Json{{"h", c.h}, {"subset", c.subset}}; }

inline Json to_json(const WeightHistogram& h) { return Json{{"bin_edges", h.bin_edges}, {"counts", h.counts}}; }

inline Json to_json(const ThresholdRecord& r) {
  Json club = Json::array();
  for (const auto& n : r.rich_club) club.push_back(Json{{"node", n.node}, {"strength", n.strength}});
  Json failures = Json::object();
  for (const auto& [field, reason] : r.failures) failures[field] = reason;
  return Json{{"threshold", threshold_json(r.threshold)},
              {"edge_count", r.edge_count},
              {"total_weight", r.total_weight},
              {"component_count", r.component_count},
              {"giant_fraction", r.giant_fraction},
              {"q", optional_json(r.q)},
              {"community_count", optional_json(r.community_count)},
              {"communities", r.partition ? Json(r.partition->assignment) : Json(nullptr)},
              {"eigenvalues", optional_json(r.eigenvalues)},
              {"lambda2", optional_json(r.lambda2)},
              {"lambda2_normalized", optional_json(r.lambda2_normalized)},
              {"zero_count", optional_json(r.zero_count)},
              {"conductance_report", r.conductance_report ? to_json(*r.conductance_report) : Json(nullptr)},
              {"rich_club", club},
              {"failures", failures}};
}

inline Json to_json(const std::vector<ThresholdRecord>& records) {
  Json out = Json::array();
  for (const auto& r : records) out.push_back(to_json(r));
  return out;
}

inline Json to_json(const RichClubTrace& t) {
  Json per = Json::array();
  for (const auto& m : t.per_threshold) {
    Json tracked = Json::array();
    for (const auto& n : m.tracked) tracked.push_back(Json{{"node", n.node}, {"strength", n.strength}});
    per.push_back(Json{{"threshold", threshold_json(m.threshold)},
                       {"members", m.members},
                       {"tracked", tracked},
                       {"degenerate", m.degenerate}});
  }
  Json events = Json::array();
  for (const auto& e : t.events)
    events.push_back(Json{{"node", e.node},
                          {"threshold", threshold_json(e.threshold)},
                          {"kind", e.kind == ClubEventKind::entered ? "entered" : "exited"}});
  return Json{{"baseline", t.baseline}, {"per_threshold", per}, {"events", events}};
}

namespace detail {
template <typename T>
std::string csv_cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) return format_real(*v);
  else return std::to_string(*v);
}
}  // namespace detail

/// threshold,edges,components,giant_fraction,Q,communities,lambda2,zeros,h_min
inline void write_sweep_csv(std::ostream& out, const std::vector<ThresholdRecord>& records) {
  out << "threshold,edges,components,giant_fraction,Q,communities,lambda2,zeros,h_min\n";
  for (const auto& r : records) {
    const std::optional<double> h_min =
        r.conductance_report ? std::optional<double>(r.conductance_report->h_min) : std::nullopt;
    out << threshold_text(r.threshold) << ',' << r.edge_count << ',' << r.component_count << ','
        << format_real(r.giant_fraction) << ',' << detail::csv_cell(r.q) << ',' << detail::csv_cell(r.community_count)
        << ',' << detail::csv_cell(r.lambda2) << ',' << detail::csv_cell(r.zero_count) << ','
        << detail::csv_cell(h_min) << '\n';
  }
}

/// One row per tracked node per threshold: threshold,node_id,strength,in_club.
/// Nodes outside the tracked pool at a threshold have no row there.
inline void write_rich_club_csv(std::ostream& out, const RichClubTrace& t) {
  out << "threshold,node_id,strength,in_club\n";
  for (const auto& m : t.per_threshold) {
    for (std::size_t i = 0; i < m.tracked.size(); ++i)
      out << threshold_text(m.threshold) << ',' << m.tracked[i].node << ',' << format_real(m.tracked[i].strength)
          << ',' << (i < m.members.size() ? "true" : "false") << '\n';
  }
}

/// JSON header line {"q","community_count"} followed by `node_id community_id`.
inline void write_partition(std::ostream& out, const Partition& p) {
  out << Json{{"q", p.q}, {"community_count", p.community_count}}.dump() << '\n';
  for (std::size_t v = 0; v < p.assignment.size(); ++v) out << v << ' ' << p.assignment[v] << '\n';
}

inline Partition read_partition(std::istream& in, std::size_t node_count) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<CommunityId> raw(node_count);
  std::vector<bool> seen(node_count, false);
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && !line.empty() && line.front() == '{') continue;  // header is recomputed
    const auto fields = detail::split_fields(detail::strip_comment(line));
    if (fields.empty()) continue;
    if (fields.size() != 2) throw ParseError(line_no, "expected 'node_id community_id'");
    const auto v = detail::parse_index(fields[0], line_no);
    const auto c = detail::parse_index(fields[1], line_no);
    if (v >= node_count) throw ParseError(line_no, "unknown node " + std::to_string(v));
    if (seen[v]) throw ParseError(line_no, "node " + std::to_string(v) + " assigned twice");
    seen[v] = true;
    raw[v] = static_cast<CommunityId>(c);
  }
  for (std::size_t v = 0; v < node_count; ++v)
    if (!seen[v]) throw ParseError(line_no, "node " + std::to_string(v) + " has no community");
  return canonical_partition(raw);
}

}  // namespace netres
