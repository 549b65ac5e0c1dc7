// Copyright 2026 The sparsemp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sparsemp/harness.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

namespace smp::harness {
namespace {

class TempDir {
 public:
  explicit TempDir(const char* tag) {
    dir_ = std::filesystem::temp_directory_path() /
           (std::string("sparsemp_harness_") + tag + "_" +
            std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string root() const { return dir_.string(); }

 private:
  std::filesystem::path dir_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig trend_config() {
  ExperimentConfig config;
  config.set("application", "trend");
  config.set("n", "50");
  config.set("kinks", "3");
  config.set("sigma", "0.02");
  config.set("methods", "mpec_epm");
  config.set("k_grid", "5,10");
  config.set("seed", "4");
  return config;
}

TEST(ExperimentConfigTest, FileParsingAndOverrides) {
  TempDir tmp("cfg");
  {
    std::ofstream out(tmp.path("exp.cfg"));
    out << "# comment\napplication = trend\nn = 40\nmpec_epm.rho0 = 0.5\n";
  }
  ExperimentConfig config = ExperimentConfig::from_file(tmp.path("exp.cfg"));
  EXPECT_EQ(config.get("application", ""), "trend");
  EXPECT_EQ(config.get_long("n", 0), 40);
  EXPECT_DOUBLE_EQ(config.get_scoped("mpec_epm", "rho0", 0.01), 0.5);
  EXPECT_DOUBLE_EQ(config.get_scoped("mpec_adm", "rho0", 0.01), 0.01);

  {
    std::ofstream out(tmp.path("bad.cfg"));
    out << "application trend\n";
  }
  EXPECT_THROW(ExperimentConfig::from_file(tmp.path("bad.cfg")), Error);
}

TEST(RunExperiment, GridCardinalityAndFeasibility) {
  BenchOutcome outcome = run_experiment(trend_config());
  ASSERT_EQ(outcome.rows.size(), 2u);  // one method x two k values
  for (const ResultRow& row : outcome.rows) {
    EXPECT_LE(double(row.l0), row.k);
    EXPECT_EQ(row.method, "mpec_epm");
  }
}

TEST(RunExperiment, UnknownMethodThrows) {
  ExperimentConfig config = trend_config();
  config.set("methods", "nope");
  EXPECT_THROW(run_experiment(config), Error);
}

TEST(ResultsCsv, RoundTripsFullPrecision) {
  ExperimentConfig config = trend_config();
  BenchOutcome outcome = run_experiment(config);
  const std::string text = render_results_csv(outcome.rows);
  std::vector<ResultRow> parsed = parse_results_csv(text);
  ASSERT_EQ(parsed.size(), outcome.rows.size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    EXPECT_EQ(parsed[i].method, outcome.rows[i].method);
    EXPECT_EQ(parsed[i].k, outcome.rows[i].k);
    EXPECT_EQ(parsed[i].seed, outcome.rows[i].seed);
    EXPECT_EQ(parsed[i].objective, outcome.rows[i].objective);  // bitwise
    EXPECT_EQ(parsed[i].l0, outcome.rows[i].l0);
    EXPECT_EQ(parsed[i].gap, outcome.rows[i].gap);
    EXPECT_EQ(parsed[i].converged, outcome.rows[i].converged);
  }
}

TEST(RunBench, DeterministicResultsFile) {
  TempDir tmp_a("bench_a");
  TempDir tmp_b("bench_b");
  ExperimentConfig config = trend_config();
  run_bench(config, tmp_a.root());
  run_bench(config, tmp_b.root());
  const std::string a = slurp(tmp_a.path("results.csv"));
  const std::string b = slurp(tmp_b.path("results.csv"));
  ASSERT_FALSE(a.empty());
  EXPECT_EQ(a, b);  // byte-identical
  EXPECT_TRUE(std::filesystem::exists(tmp_a.path("plot.dat")));
  EXPECT_TRUE(std::filesystem::exists(tmp_a.path("timings.csv")));
  EXPECT_TRUE(
      std::filesystem::exists(tmp_a.path("trace_mpec_epm_k5_seed4.csv")));
  // Trace headers echo the solver defaults.
  const std::string trace = slurp(tmp_a.path("trace_mpec_epm_k5_seed4.csv"));
  EXPECT_NE(trace.find("rho0=0.01"), std::string::npos);
  EXPECT_NE(trace.find("mu=0.01"), std::string::npos);
  EXPECT_NE(trace.find("alpha=0.01"), std::string::npos);
}

TEST(RunBench, ParallelCellsMatchSerial) {
  TempDir tmp_serial("serial");
  TempDir tmp_par("par");
  ExperimentConfig config = trend_config();
  config.set("methods", "mpec_epm,qpm");
  run_bench(config, tmp_serial.root());
  config.set("jobs", "4");
  run_bench(config, tmp_par.root());
  EXPECT_EQ(slurp(tmp_serial.path("results.csv")), slurp(tmp_par.path("results.csv")));
}

TEST(CompareReport, WinnerCounts) {
  std::vector<ResultRow> rows;
  ResultRow a;
  a.method = "alpha";
  a.k = 5;
  a.objective = 1.0;
  rows.push_back(a);
  ResultRow b;
  b.method = "beta";
  b.k = 5;
  b.objective = 2.0;
  rows.push_back(b);
  const std::string report = compare_report(rows);
  EXPECT_NE(report.find("alpha: 1.00"), std::string::npos);
  EXPECT_NE(report.find("beta: 0.00"), std::string::npos);

  // A single method wins every k.
  std::vector<ResultRow> solo;
  for (double k : {2.0, 4.0, 8.0}) {
    ResultRow r;
    r.method = "only";
    r.k = k;
    r.objective = k;
    solo.push_back(r);
  }
  const std::string solo_report = compare_report(solo);
  EXPECT_NE(solo_report.find("only: 3.00"), std::string::npos);
}

TEST(SeedResolution, EnvFallback) {
  ExperimentConfig config;
  ::setenv("SPARSEMP_SEED", "123", 1);
  EXPECT_EQ(resolve_seed(config), 123u);
  config.set("seed", "9");
  EXPECT_EQ(resolve_seed(config), 9u);
  ::unsetenv("SPARSEMP_SEED");
  ExperimentConfig empty;
  EXPECT_EQ(resolve_seed(empty), 0u);
}

TEST(BuildProblem, AllSyntheticApplications) {
  for (const char* app :
       {"feature_logistic", "feature_hinge", "segreg", "trend", "mrf", "l0tv"}) {
    ExperimentConfig config;
    config.set("application", app);
    config.set("n", "24");
    config.set("height", "6");
    config.set("width", "6");
    BuiltProblem built = build_problem(config, 1);
    EXPECT_GT(built.problem.constraint_map.rows(), 0) << app;
    EXPECT_GT(built.problem.objective.lipschitz_f, 0.0) << app;
  }
  ExperimentConfig config;
  config.set("application", "bogus");
  EXPECT_THROW(build_problem(config, 1), Error);
}

}  // namespace
}  // namespace smp::harness
