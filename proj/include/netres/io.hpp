#pragma once

// Text ingestion and emission for graphs:
//   edge list     `u v w` per line, `#` comments, optional `nodes <n>` header
//   dense matrix  n lines of n whitespace-separated reals
//   positions     `id x y z` per line
//   labels        `id label` per line (label is the rest of the line)

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_set>
#include <vector>

#include "netres/error.hpp"
#include "netres/graph.hpp"

namespace netres {

namespace detail {

inline std::string_view strip_comment(std::string_view line) {
  if (auto pos = line.find('#'); pos != std::string_view::npos) line = line.substr(0, pos);
  return line;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::uint64_t parse_index(std::string_view tok, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || value > std::numeric_limits<NodeId>::max() - 1)
    throw ParseError(line_no, "expected a non-negative node id, got '" + std::string(tok) + "'");
  return value;
}

inline double parse_real(std::string_view tok, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value))
    throw ParseError(line_no, "expected a real number, got '" + std::string(tok) + "'");
  return value;
}

}  // namespace detail

inline WeightedGraph from_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> pairs;
  std::optional<std::uint64_t> declared;
  std::uint64_t max_id_plus_one = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto fields = detail::split_fields(detail::strip_comment(raw));
    if (fields.empty()) continue;
    if (fields[0] == "nodes") {
      if (fields.size() != 2) throw ParseError(line_no, "header must be 'nodes <n>'");
      if (declared) throw ParseError(line_no, "duplicate 'nodes' header");
      declared = detail::parse_index(fields[1], line_no);
      continue;
    }
    if (fields.size() != 3) throw ParseError(line_no, "expected 'u v w'");
    const auto u = detail::parse_index(fields[0], line_no);
    const auto v = detail::parse_index(fields[1], line_no);
    const double w = detail::parse_real(fields[2], line_no);
    if (u == v) throw ParseError(line_no, "self-loop on node " + std::to_string(u));
    if (!(w > 0.0)) throw ParseError(line_no, "edge weight must be > 0");
    if (!pairs.insert((std::min(u, v) << 32) | std::max(u, v)).second)
      throw ParseError(line_no, "duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
    max_id_plus_one = std::max(max_id_plus_one, std::max(u, v) + 1);
  }
  if (declared && *declared < max_id_plus_one)
    throw ParseError(line_no, "'nodes' header declares " + std::to_string(*declared) +
                                  " nodes but ids reach " + std::to_string(max_id_plus_one - 1));
  const std::size_t n = declared ? *declared : max_id_plus_one;
  try {
    return WeightedGraph(n, std::move(edges));
  } catch (const InvalidGraph& e) {
    throw ParseError(line_no, e.what());
  }
}

/// Reads a symmetric matrix with zero diagonal. Only upper-triangle non-zeros
/// are retained, so memory is proportional to the edge count.
inline WeightedGraph from_dense_matrix(std::istream& in, double symmetry_tol = 1e-12) {
  struct Entry {
    NodeId col;
    double w;
  };
  std::vector<std::vector<Entry>> upper;  // row i: entries with col > i
  std::vector<std::size_t> cursor;        // next unmatched entry per row
  std::size_t n = 0;
  std::size_t row = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto fields = detail::split_fields(detail::strip_comment(raw));
    if (fields.empty()) continue;
    if (row == 0) {
      n = fields.size();
      upper.resize(n);
      cursor.assign(n, 0);
    }
    if (fields.size() != n) throw ParseError(line_no, "matrix is not square: row has " +
                                                          std::to_string(fields.size()) + " entries, expected " +
                                                          std::to_string(n));
    if (row >= n) throw ParseError(line_no, "matrix is not square: more than " + std::to_string(n) + " rows");
    for (std::size_t col = 0; col < n; ++col) {
      const double a = detail::parse_real(fields[col], line_no);
      if (a < 0.0) throw ParseError(line_no, "negative entry in column " + std::to_string(col));
      if (col == row) {
        if (a != 0.0) throw ParseError(line_no, "non-zero diagonal entry");
      } else if (col > row) {
        if (a > 0.0) upper[row].push_back({static_cast<NodeId>(col), a});
      } else {
        // Mirror of (col, row), which was stored while reading row `col`.
        auto& entries = upper[col];
        auto& c = cursor[col];
        const double mirror = (c < entries.size() && entries[c].col == row) ? entries[c++].w : 0.0;
        if (std::fabs(a - mirror) > symmetry_tol)
          throw ParseError(line_no, "matrix is not symmetric at (" + std::to_string(row) + ", " +
                                        std::to_string(col) + ")");
      }
    }
    ++row;
  }
  if (row != n) throw ParseError(line_no, "matrix is not square: " + std::to_string(row) + " rows, " +
                                              std::to_string(n) + " columns");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& e : upper[i]) edges.push_back({static_cast<NodeId>(i), e.col, e.w});
  return WeightedGraph(n, std::move(edges));
}

inline std::string format_real(double x) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

/// Writes the `nodes <n>` header followed by one edge per line at full
/// precision, so reading the output back reproduces the graph exactly.
inline void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out << "nodes " << g.node_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << format_real(e.w) << '\n';
}

inline WeightedGraph read_positions(std::istream& in, const WeightedGraph& g) {
  std::vector<Position> pos(g.node_count(), Position{0.0, 0.0, 0.0});
  std::vector<bool> seen(g.node_count(), false);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto fields = detail::split_fields(detail::strip_comment(raw));
    if (fields.empty()) continue;
    if (fields.size() != 4) throw ParseError(line_no, "expected 'id x y z'");
    const auto id = detail::parse_index(fields[0], line_no);
    if (id >= g.node_count()) throw ParseError(line_no, "position for unknown node " + std::to_string(id));
    if (seen[id]) throw ParseError(line_no, "duplicate position for node " + std::to_string(id));
    seen[id] = true;
    for (std::size_t k = 0; k < 3; ++k) pos[id][k] = detail::parse_real(fields[k + 1], line_no);
  }
  return g.with_positions(std::move(pos));
}

/// Unlisted nodes get their decimal id as label.
inline WeightedGraph read_labels(std::istream& in, const WeightedGraph& g) {
  std::vector<std::string> labels(g.node_count());
  for (std::size_t v = 0; v < labels.size(); ++v) labels[v] = std::to_string(v);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::strip_comment(raw);
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() < 2) throw ParseError(line_no, "expected 'id label'");
    const auto id = detail::parse_index(fields[0], line_no);
    if (id >= g.node_count()) throw ParseError(line_no, "label for unknown node " + std::to_string(id));
    const auto start = static_cast<std::size_t>(fields[1].data() - line.data());
    const auto stop = static_cast<std::size_t>(fields.back().data() + fields.back().size() - line.data());
    labels[id] = std::string(line.substr(start, stop - start));
  }
  return g.with_labels(std::move(labels));
}

}  // namespace netres
