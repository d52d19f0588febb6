#pragma once

// netres command-line front end. Each subcommand parses flags, loads input,
// calls one library entry point and serializes the result.
//
// Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <CLI11.hpp>

#include "netres/cheeger.hpp"
#include "netres/community.hpp"
#include "netres/detail/parallel.hpp"
#include "netres/error.hpp"
#include "netres/graph.hpp"
#include "netres/io.hpp"
#include "netres/report.hpp"
#include "netres/spectral.hpp"
#include "netres/sweep.hpp"
#include "netres/synth.hpp"

namespace netres::cli {

enum ExitCode : int { ok = 0, usage_error = 1, input_error = 2, numerical_error = 3 };

/// Input file could not be opened or read.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Writes via a sibling temporary file and renames it into place, so
/// readers never observe a partial report. "-" means the output stream.
inline void write_output(const std::string& path, std::ostream& stdout_stream,
                         const std::function<void(std::ostream&)>& emit) {
  if (path.empty() || path == "-") {
    emit(stdout_stream);
    stdout_stream.flush();
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open '" + tmp.string() + "' for writing");
    emit(out);
    out.flush();
    if (!out) throw InputError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot move report into '" + path + "': " + ec.message());
  }
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input '" + path + "'");
  return in;
}

inline std::vector<double> parse_threshold_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "original" || tok == "inf") {
      out.push_back(original_threshold);
      continue;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw InvalidArgument("bad threshold '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

inline std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw InvalidArgument("bad block size '" + tok + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

struct InputFlags {
  std::string input;
  std::string format = "edge-list";
  std::string positions;
  std::string labels;
  std::string out = "-";
  bool binary_degree = false;
  bool keep_above = false;
  bool keep_below = false;
  std::size_t threads = detail::default_thread_count();

  void attach(CLI::App* cmd) {
    cmd->add_option("--input,-i", input, "graph file")->required();
    cmd->add_option("--format", format, "edge-list | dense-matrix")
        ->check(CLI::IsMember({"edge-list", "dense-matrix"}));
    cmd->add_option("--positions", positions, "node positions file (id x y z)");
    cmd->add_option("--labels", labels, "node labels file (id label)");
    cmd->add_option("--out,-o", out, "output path, '-' for stdout");
    cmd->add_flag("--binary-degree", binary_degree, "count incident edges instead of summing weights");
    auto* above = cmd->add_flag("--keep-above", keep_above, "erosion keeps w >= t");
    auto* below = cmd->add_flag("--keep-below", keep_below, "erosion keeps w <= t (default)");
    above->excludes(below);
    cmd->add_option("--threads", threads, "worker threads (default NETRES_THREADS or 1)");
  }

  WeightedGraph load() const {
    auto in = open_input(input);
    WeightedGraph g = format == "dense-matrix" ? from_dense_matrix(in) : from_edge_list(in);
    if (!positions.empty()) {
      auto pin = open_input(positions);
      g = read_positions(pin, g);
    }
    if (!labels.empty()) {
      auto lin = open_input(labels);
      g = read_labels(lin, g);
    }
    return g;
  }

  DegreeMode degree() const { return binary_degree ? DegreeMode::binary : DegreeMode::weighted; }
  ErosionRule rule() const { return keep_above ? ErosionRule::keep_above : ErosionRule::keep_below; }

  WeightedGraph load_eroded(const std::optional<double>& threshold) const {
    WeightedGraph g = load();
    return threshold ? erode_above(g, *threshold, rule()) : g;
  }
};

inline Json graph_summary(const WeightedGraph& g) {
  Json j{{"nodes", g.node_count()}, {"edges", g.edge_count()}, {"total_weight", g.total_weight()},
         {"max_weight", g.max_weight()}};
  if (g.labels()) j["labels"] = *g.labels();
  return j;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Network resilience under threshold erosion"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  std::size_t restarts = 10;
  std::string threshold_text;
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed (default 42)");
    cmd->add_option("--restarts", restarts, "Louvain restarts (default 10)");
  };
  auto optional_threshold = [&]() -> std::optional<double> {
    if (threshold_text.empty()) return std::nullopt;
    const auto list = parse_threshold_list(threshold_text);
    if (list.size() != 1) throw InvalidArgument("--threshold takes a single value");
    return list.front();
  };

  // analyze
  InputFlags analyze_in;
  std::size_t bins = 20, club = 21, pool = 50, k_analyze = 2;
  auto* analyze = app.add_subcommand("analyze", "whole-graph analysis: record, histogram");
  analyze_in.attach(analyze);
  add_seed(analyze);
  analyze->add_option("--bins", bins, "weight histogram bins");
  analyze->add_option("--rich-club-size", club);
  analyze->add_option("--track-pool", pool);
  analyze->add_option("--k", k_analyze, "eigenvalues to report");

  // sweep
  InputFlags sweep_in;
  std::string thresholds;
  std::string trace_out, summary_out;
  double giant_cutoff = 0.5;
  bool csv = false;
  SweepConfig sweep_cfg;
  auto* sweep = app.add_subcommand("sweep", "threshold sweep report");
  sweep_in.attach(sweep);
  add_seed(sweep);
  sweep->add_option("--thresholds", thresholds, "comma-separated, descending; 'original' = no erosion");
  sweep->add_option("--rich-club-size", sweep_cfg.rich_club_size);
  sweep->add_option("--track-pool", sweep_cfg.track_pool);
  sweep->add_option("--laplacian-k", sweep_cfg.laplacian_k);
  sweep->add_option("--giant-cutoff", giant_cutoff);
  sweep->add_option("--rich-club-out", trace_out, "rich-club trace output path");
  sweep->add_option("--summary-out", summary_out, "breakdown summary output path");
  sweep->add_flag("--csv", csv, "write CSV projections instead of JSON");

  // spectrum
  InputFlags spectrum_in;
  std::size_t k = 2;
  bool normalized = false;
  std::string method = "auto";
  auto* spectrum = app.add_subcommand("spectrum", "smallest Laplacian eigenvalues");
  spectrum_in.attach(spectrum);
  spectrum->add_option("--k", k, "number of eigenvalues");
  spectrum->add_flag("--normalized", normalized, "use I - D^-1/2 A D^-1/2");
  spectrum->add_option("--threshold", threshold_text, "erode before analysis");
  spectrum->add_option("--method", method)->check(CLI::IsMember({"auto", "dense", "iterative"}));

  // cheeger
  InputFlags cheeger_in;
  std::string partition_path;
  bool exact = false;
  auto* cheeger = app.add_subcommand("cheeger", "module conductances and Cheeger bounds");
  cheeger_in.attach(cheeger);
  add_seed(cheeger);
  cheeger->add_option("--threshold", threshold_text, "erode before analysis");
  cheeger->add_option("--partition", partition_path, "partition file; Louvain when absent");
  cheeger->add_flag("--exact", exact, "also compute the exact constant (at most 16 nodes)");

  // communities
  InputFlags communities_in;
  auto* communities = app.add_subcommand("communities", "Louvain partition");
  communities_in.attach(communities);
  add_seed(communities);
  communities->add_option("--threshold", threshold_text, "erode before analysis");

  // generate
  std::string gen_out = "-", partition_out;
  std::string blocks = "20,20";
  PlantedPartitionSpec planted_spec;
  double intra = 0.08, inter = 0.02;
  std::size_t rn = 100;
  double rp = 0.1, rlo = 0.5, rhi = 1.0;
  auto* generate = app.add_subcommand("generate", "synthetic networks");
  generate->require_subcommand(1);
  auto add_blocks = [&](CLI::App* cmd) {
    cmd->add_option("--blocks", blocks, "comma-separated block sizes");
    cmd->add_option("--p-in", planted_spec.p_in);
    cmd->add_option("--p-out", planted_spec.p_out);
    cmd->add_option("--seed", planted_spec.seed);
    cmd->add_option("--out,-o", gen_out);
    cmd->add_option("--partition-out", partition_out, "planted labels output path");
  };
  auto* gen_planted = generate->add_subcommand("planted", "planted partition");
  add_blocks(gen_planted);
  gen_planted->add_option("--w-in-lo", planted_spec.w_in.lo);
  gen_planted->add_option("--w-in-hi", planted_spec.w_in.hi);
  gen_planted->add_option("--w-out-lo", planted_spec.w_out.lo);
  gen_planted->add_option("--w-out-hi", planted_spec.w_out.hi);
  auto* gen_strata = generate->add_subcommand("strata", "two weight strata with a known breakdown threshold");
  add_blocks(gen_strata);
  gen_strata->add_option("--intra", intra);
  gen_strata->add_option("--inter", inter);
  gen_strata->add_option("--giant-cutoff", giant_cutoff);
  auto* gen_random = generate->add_subcommand("random", "independent edges with uniform weights");
  gen_random->add_option("--n", rn);
  gen_random->add_option("--p", rp);
  gen_random->add_option("--weight-lo", rlo);
  gen_random->add_option("--weight-hi", rhi);
  gen_random->add_option("--seed", planted_spec.seed);
  gen_random->add_option("--out,-o", gen_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  try {
    if (*analyze) {
      const WeightedGraph g = analyze_in.load();
      SweepConfig cfg;
      cfg.louvain_seed = seed;
      cfg.restarts = restarts;
      cfg.track_pool = pool;
      cfg.rich_club_size = club;
      cfg.laplacian_k = k_analyze;
      cfg.degree = analyze_in.degree();
      cfg.rule = analyze_in.rule();
      const auto record = analyze_threshold(g, original_threshold, cfg);
      Json j{{"graph", graph_summary(g)}, {"record", to_json(record)}};
      j["histogram"] = g.edge_count() ? to_json(weight_histogram(g, bins)) : Json(nullptr);
      write_output(analyze_in.out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    } else if (*sweep) {
      const WeightedGraph g = sweep_in.load();
      if (!thresholds.empty()) sweep_cfg.thresholds = parse_threshold_list(thresholds);
      sweep_cfg.louvain_seed = seed;
      sweep_cfg.restarts = restarts;
      sweep_cfg.degree = sweep_in.degree();
      sweep_cfg.rule = sweep_in.rule();
      sweep_cfg.threads = sweep_in.threads;
      const auto records = run_sweep(g, sweep_cfg);
      write_output(sweep_in.out, out, [&](std::ostream& os) {
        if (csv) write_sweep_csv(os, records);
        else os << to_json(records).dump(2) << '\n';
      });
      if (!trace_out.empty()) {
        const auto trace = rich_club_trace(records, sweep_cfg);
        write_output(trace_out, out, [&](std::ostream& os) {
          if (csv) write_rich_club_csv(os, trace);
          else os << to_json(trace).dump(2) << '\n';
        });
      }
      if (!summary_out.empty()) {
        const auto breakdown = detect_breakdown(records, giant_cutoff);
        Json j{{"giant_cutoff", giant_cutoff},
               {"breakdown_threshold", breakdown ? threshold_json(*breakdown) : Json(nullptr)}};
        write_output(summary_out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
      }
    } else if (*spectrum) {
      const WeightedGraph g = spectrum_in.load_eroded(optional_threshold());
      SpectrumOptions opt;
      opt.method = method == "dense" ? EigenMethod::dense
                   : method == "iterative" ? EigenMethod::iterative
                                           : EigenMethod::automatic;
      const auto s = smallest_eigenvalues(g, k, normalized, opt);
      write_output(spectrum_in.out, out, [&](std::ostream& os) { os << to_json(s).dump(2) << '\n'; });
    } else if (*cheeger) {
      const WeightedGraph g = cheeger_in.load_eroded(optional_threshold());
      Partition p;
      if (partition_path.empty()) {
        LouvainOptions opt;
        opt.seed = seed;
        opt.restarts = restarts;
        opt.threads = cheeger_in.threads;
        p = louvain(g, opt);
      } else {
        auto pin = open_input(partition_path);
        p = read_partition(pin, g.node_count());
        p.q = modularity(g, p);
      }
      const auto lambda2 = smallest_eigenvalues(g, 2, false).lambda2.value();
      const auto lambda2_norm = smallest_eigenvalues(g, 2, true).lambda2;
      const auto report = module_cheeger(g, p, lambda2, lambda2_norm, cheeger_in.degree());
      Json j{{"q", p.q}, {"community_count", p.community_count}, {"report", to_json(report)}};
      if (exact) j["exact"] = to_json(brute_force_cheeger(g, cheeger_in.degree()));
      write_output(cheeger_in.out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    } else if (*communities) {
      const WeightedGraph g = communities_in.load_eroded(optional_threshold());
      LouvainOptions opt;
      opt.seed = seed;
      opt.restarts = restarts;
      opt.threads = communities_in.threads;
      const auto p = louvain(g, opt);
      write_output(communities_in.out, out, [&](std::ostream& os) { write_partition(os, p); });
    } else if (*generate) {
      if (*gen_random) {
        const auto g = weighted_random_graph(rn, rp, rlo, rhi, planted_spec.seed);
        write_output(gen_out, out, [&](std::ostream& os) { write_edge_list(os, g); });
      } else {
        planted_spec.block_sizes = parse_size_list(blocks);
        if (*gen_planted) {
          const auto pg = planted_partition(planted_spec);
          write_output(gen_out, out, [&](std::ostream& os) { write_edge_list(os, pg.graph); });
          if (!partition_out.empty())
            write_output(partition_out, out, [&](std::ostream& os) { write_partition(os, pg.planted); });
        } else {
          const auto sg = strata_graph(planted_spec, intra, inter, giant_cutoff);
          write_output(gen_out, out, [&](std::ostream& os) {
            os << "# breakdown_threshold "
               << (sg.breakdown_threshold ? netres::threshold_text(*sg.breakdown_threshold) : std::string("none")) << '\n';
            write_edge_list(os, sg.graph);
          });
          if (!partition_out.empty())
            write_output(partition_out, out, [&](std::ostream& os) { write_partition(os, sg.planted); });
        }
      }
    }
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical_error;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return input_error;
  } catch (const InvalidGraph& e) {
    err << "invalid graph: " << e.what() << '\n';
    return input_error;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return input_error;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return numerical_error;
  }
  return ok;
}

}  // namespace netres::cli
