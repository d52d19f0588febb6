#include <gtest/gtest.h>

#include <sstream>

#include "netres/report.hpp"
#include "netres/synth.hpp"
#include "oracles.hpp"

using namespace netres;

namespace {
std::vector<ThresholdRecord> toy_records() {
  SweepConfig cfg;
  cfg.rich_club_size = 3;
  cfg.track_pool = 4;
  cfg.restarts = 2;
  cfg.thresholds = {original_threshold, 0.5};
  return run_sweep(oracle::bridged_triangles(), cfg);
}
}  // namespace

TEST(ReportJson, OriginalThresholdIsLabelled) {
  const auto j = to_json(toy_records());
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["threshold"], "original");
  EXPECT_EQ(j[1]["threshold"], 0.5);
  for (const char* key : {"edge_count", "component_count", "giant_fraction", "q", "community_count", "communities",
                          "lambda2", "zero_count", "conductance_report", "rich_club", "failures"})
    EXPECT_TRUE(j[0].contains(key)) << key;
  EXPECT_EQ(j[0]["conductance_report"]["modules"].size(), 2u);
  EXPECT_EQ(j[0]["rich_club"].size(), 4u);
}

TEST(ReportJson, NullFieldsForEdgelessRecord) {
  SweepConfig cfg;
  cfg.rich_club_size = 1;
  cfg.track_pool = 2;
  cfg.thresholds = {0.0};
  const auto j = to_json(run_sweep(oracle::bridged_triangles(), cfg));
  EXPECT_TRUE(j[0]["q"].is_null());
  EXPECT_TRUE(j[0]["conductance_report"].is_null());
  EXPECT_TRUE(j[0]["failures"].contains("q"));
}

TEST(ReportCsv, SweepHeaderAndRows) {
  std::ostringstream out;
  write_sweep_csv(out, toy_records());
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "threshold,edges,components,giant_fraction,Q,communities,lambda2,zeros,h_min");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 13), "original,7,1,");
}

TEST(ReportCsv, RichClubRows) {
  SweepConfig cfg;
  cfg.rich_club_size = 3;
  cfg.track_pool = 4;
  cfg.thresholds = {original_threshold, 0.5};
  const auto trace = rich_club_trace(toy_records(), cfg);
  std::ostringstream out;
  write_rich_club_csv(out, trace);
  std::istringstream in(out.str());
  std::string line;
  std::size_t rows = 0, in_club = 0;
  std::getline(in, line);
  EXPECT_EQ(line, "threshold,node_id,strength,in_club");
  while (std::getline(in, line)) {
    ++rows;
    in_club += line.ends_with(",true");
  }
  EXPECT_EQ(rows, 8u);
  EXPECT_EQ(in_club, 6u);
}

TEST(PartitionFile, RoundTrip) {
  const auto g = weighted_random_graph(30, 0.2, 0.1, 1.0, 4);
  const auto p = louvain(g, 1, 2);
  std::ostringstream out;
  write_partition(out, p);
  std::istringstream in(out.str());
  const auto back = read_partition(in, 30);
  EXPECT_EQ(back.assignment, p.assignment);
  EXPECT_EQ(back.community_count, p.community_count);
}

TEST(PartitionFile, MissingNodeRejected) {
  std::istringstream in("0 0\n1 1\n");
  EXPECT_THROW(read_partition(in, 3), ParseError);
}
