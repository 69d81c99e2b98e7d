#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "symts/experiment.hpp"

using namespace symts;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("symts_experiment_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv(const std::filesystem::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(ParseGrids, BothPairOrders) {
  const auto g = parse_grids("16:4,6:36, 64:8");
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0].coarse, 4);
  EXPECT_EQ(g[0].fine, 16);
  EXPECT_EQ(g[1].coarse, 6);
  EXPECT_EQ(g[1].fine, 36);
  EXPECT_EQ(g[2].fine, 64);
  const auto single = parse_grids("10");
  EXPECT_EQ(single[0].coarse, 10);
  EXPECT_EQ(single[0].fine, 10);
  EXPECT_THROW((void)parse_grids(""), std::invalid_argument);
  EXPECT_THROW((void)parse_grids("4:x"), std::invalid_argument);
  EXPECT_THROW((void)parse_grids("4:16,"), std::invalid_argument);
  EXPECT_THROW((void)parse_grids("0:4"), std::invalid_argument);
}

TEST(ParseNames, RoundTrip) {
  for (auto m : {Method::Fem, Method::TwoScale, Method::SymTwoScale}) EXPECT_EQ(parse_method(method_name(m)), m);
  for (auto k : {ProblemKind::Auto, ProblemKind::Source, ProblemKind::Eigen}) EXPECT_EQ(parse_kind(kind_name(k)), k);
  EXPECT_THROW((void)parse_method("multigrid"), std::invalid_argument);
}

TEST(RunConfig, Validation) {
  RunConfig cfg;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.grids = parse_grids("4:6");
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.method = Method::Fem;
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Run, WritesConvergenceTable) {
  RunConfig cfg;
  cfg.problem = "ex1";
  cfg.grids = parse_grids("16:4,36:6,64:8");
  cfg.out_dir = scratch("table");
  std::ostringstream log;
  ASSERT_EQ(run(cfg, log), 0) << log.str();
  const auto rows = csv(cfg.out_dir / "convergence.csv");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(slurp(cfg.out_dir / "convergence.csv").substr(0, kConvergenceHeader.size()), kConvergenceHeader);
  for (const auto& r : rows) EXPECT_EQ(r.size(), 17u);
  EXPECT_EQ(rows[1][0], "ex1");
  EXPECT_EQ(rows[1][1], "sym-two-scale");
  EXPECT_EQ(rows[1][3], "4");
  EXPECT_EQ(rows[1][4], "16");
  EXPECT_EQ(rows[1][9], "");   // no eigenvalue
  EXPECT_EQ(rows[1][10], "");  // no previous row
  EXPECT_NE(rows[2][10], "");
  EXPECT_GT(std::stod(rows[3][11]), 1.5);
  EXPECT_NE(rows[1][14], "");  // transform time
  EXPECT_TRUE(std::filesystem::exists(cfg.out_dir / "timings.csv"));
  EXPECT_TRUE(std::filesystem::exists(cfg.out_dir / "plot.py"));
}

TEST(Run, FemOnEigenProblemFillsEigError) {
  RunConfig cfg;
  cfg.problem = "ex3";
  cfg.method = Method::Fem;
  cfg.grids = parse_grids("8,10");
  cfg.out_dir = scratch("fem_eig");
  std::ostringstream log;
  ASSERT_EQ(run(cfg, log), 0) << log.str();
  const auto rows = csv(cfg.out_dir / "convergence.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GT(std::stod(rows[1][9]), 0.0);
  EXPECT_EQ(rows[1][5], "");  // no coarse grid
  EXPECT_EQ(rows[1][12], "");
  EXPECT_NE(rows[1][13], "");
}

TEST(Run, ByteIdenticalWithoutTiming) {
  RunConfig cfg;
  cfg.problem = "ex2";
  cfg.method = Method::TwoScale;
  cfg.grids = parse_grids("4:8,6:18");
  cfg.threads = 1;
  cfg.record_timing = false;
  std::ostringstream log;
  cfg.out_dir = scratch("det_a");
  ASSERT_EQ(run(cfg, log), 0);
  cfg.out_dir = scratch("det_b");
  ASSERT_EQ(run(cfg, log), 0);
  EXPECT_EQ(slurp(std::filesystem::temp_directory_path() / "symts_experiment_test_det_a" / "convergence.csv"),
            slurp(cfg.out_dir / "convergence.csv"));
  EXPECT_EQ(slurp(std::filesystem::temp_directory_path() / "symts_experiment_test_det_a" / "timings.csv"),
            slurp(cfg.out_dir / "timings.csv"));
}

TEST(Run, SolverFailureFlushesFailureRow) {
  RunConfig cfg;
  cfg.problem = "ex1";
  cfg.grids = parse_grids("8:2,16:4");
  cfg.solver.max_iter = 1;
  cfg.warm_up = false;
  cfg.out_dir = scratch("fail");
  std::ostringstream log;
  EXPECT_NE(run(cfg, log), 0);
  EXPECT_NE(log.str().find("error"), std::string::npos);
  const auto rows = csv(cfg.out_dir / "convergence.csv");
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(rows.back().size(), 17u);
  EXPECT_EQ(rows.back()[7], "");
}
