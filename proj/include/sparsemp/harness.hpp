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

#ifndef SPARSEMP_HARNESS_HPP_
#define SPARSEMP_HARNESS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparsemp/baselines.hpp"
#include "sparsemp/problems.hpp"

namespace smp::harness {

// Flat key = value experiment description; CLI flags merge on top of the
// file. Method-scoped overrides use a "<method>." prefix, e.g.
// "mpec_epm.rho0 = 0.1".
struct ExperimentConfig {
  std::map<std::string, std::string> kv;

  static ExperimentConfig from_file(const std::string& path);
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  // Looks up "<method>.<key>" first, then "<key>".
  double get_scoped(const std::string& method, const std::string& key,
                    double fallback) const;
};

struct ResultRow {
  std::string method;
  double k = 0.0;
  uint64_t seed = 0;
  double objective = 0.0;
  Eigen::Index l0 = 0;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
  double wall_ms = 0.0;  // kept out of results.csv so reruns are byte-identical
  std::optional<SnrMetrics> snr;
};

// A built problem plus whatever the application needs for reporting.
struct BuiltProblem {
  std::string application;
  SparsityProblem problem;
  std::optional<ImageInstance> image;  // impulse-noise runs: SNR reference
  std::optional<MrfInstance> mrf;      // MRF runs: decoded objective
};

// Problem construction from the experiment description (synthetic generation
// or data files), deterministic under seed.
BuiltProblem build_problem(const ExperimentConfig& config, uint64_t seed);

// Known method names: mpec_epm, mpec_adm, greedy, qpm, di_adm, md_adm,
// cvx_sweep. Throws ErrorCode::kUnknownMethod otherwise.
SolveResult run_method(const std::string& method, const BuiltProblem& built,
                       double k, const ExperimentConfig& config);

struct BenchOutcome {
  std::vector<ResultRow> rows;
  bool any_unconverged = false;
};

// Runs the (method, k, seed) grid in memory. Honours "jobs" for parallel
// cells; row order is canonical regardless of scheduling.
BenchOutcome run_experiment(const ExperimentConfig& config);

// run_experiment plus output files under out_dir: results.csv, timings.csv,
// per-cell trace CSVs, and plot.dat (k vs per-method median objective).
BenchOutcome run_bench(const ExperimentConfig& config, const std::string& out_dir);

std::string render_results_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_results_csv(const std::string& text);
std::vector<ResultRow> load_results_csv(const std::string& path);

// Text table with the per-k best objective starred, plus per-method winner
// counts (ties split evenly).
std::string compare_report(const std::vector<ResultRow>& rows);

void write_trace_csv(const std::string& path, const SolveResult& result,
                     const std::string& header_comment);

// Seed resolution: "seed" key, else the SPARSEMP_SEED environment variable,
// else 0.
uint64_t resolve_seed(const ExperimentConfig& config);

}  // namespace smp::harness

#endif  // SPARSEMP_HARNESS_HPP_
