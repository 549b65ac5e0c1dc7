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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "sparsemp/io.hpp"

namespace smp::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorCode::kIo, "cannot open config " + path);
  ExperimentConfig config;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw_error(ErrorCode::kParse, path + ":" + std::to_string(lineno) +
                                         ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw_error(ErrorCode::kParse,
                  path + ":" + std::to_string(lineno) + ": empty key");
    }
    config.kv[key] = value;
  }
  return config;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  kv[key] = value;
}

bool ExperimentConfig::has(const std::string& key) const {
  return kv.count(key) > 0;
}

std::string ExperimentConfig::get(const std::string& key,
                                  const std::string& fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::logic_error&) {
    throw_error(ErrorCode::kParse, "config key '" + key + "': not a number: '" +
                                       it->second + "'");
  }
}

long ExperimentConfig::get_long(const std::string& key, long fallback) const {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    return std::stol(it->second);
  } catch (const std::logic_error&) {
    throw_error(ErrorCode::kParse, "config key '" + key + "': not an integer: '" +
                                       it->second + "'");
  }
}

double ExperimentConfig::get_scoped(const std::string& method,
                                    const std::string& key,
                                    double fallback) const {
  auto it = kv.find(method + "." + key);
  if (it != kv.end()) {
    try {
      return std::stod(it->second);
    } catch (const std::logic_error&) {
      throw_error(ErrorCode::kParse, "config key '" + method + "." + key +
                                         "': not a number");
    }
  }
  return get_double(key, fallback);
}

uint64_t resolve_seed(const ExperimentConfig& config) {
  if (config.has("seed")) return uint64_t(config.get_long("seed", 0));
  if (const char* env = std::getenv("SPARSEMP_SEED")) {
    return uint64_t(std::strtoull(env, nullptr, 10));
  }
  return 0;
}

BuiltProblem build_problem(const ExperimentConfig& config, uint64_t seed) {
  const std::string app = config.get("application", "");
  if (app.empty()) {
    throw_error(ErrorCode::kInvalidArgument, "config needs an 'application' key");
  }
  BuiltProblem built;
  built.application = app;
  const std::string data = config.get("data", "");

  // k is resolved per cell later; problems are built with a provisional valid
  // budget and the cell solve swaps in its own.
  if (app == "feature_logistic" || app == "feature_hinge") {
    FeatureSelectionData fs;
    if (!data.empty()) {
      io::LibsvmData lib = io::load_libsvm(data);
      fs.features = std::move(lib.features);
      fs.labels = std::move(lib.labels);
    } else {
      const Eigen::Index n = config.get_long("n", 100);
      const Eigen::Index p = config.get_long("samples", 4 * n);
      const Eigen::Index k_true = std::max<Eigen::Index>(1, n / 10);
      fs = generate_feature_selection(p, n, k_true,
                                      config.get_double("lambda", 0.01), seed);
    }
    fs.lambda = config.get_double("lambda", 0.01);
    const double k0 = std::max(1.0, double(fs.features.cols()) / 2.0);
    const LossKind loss =
        app == "feature_logistic" ? LossKind::kLogistic : LossKind::kHinge;
    built.problem = build_feature_selection(fs, loss, k0,
                                            config.get_double("box_radius", 100.0));
  } else if (app == "segreg") {
    SegmentedRegressionInstance inst;
    if (!data.empty()) {
      // data = <design.csv>,<observations.csv>
      const auto parts = split(data, ',');
      if (parts.size() != 2) {
        throw_error(ErrorCode::kInvalidArgument,
                    "segreg data wants 'design.csv,observations.csv'");
      }
      inst.design = io::load_csv_matrix(parts[0]);
      Eigen::MatrixXd obs = io::load_csv_matrix(parts[1]);
      inst.observations = obs.col(0);
    } else {
      inst = generate_segmented_regression(config.get_long("n", 64),
                                           config.get_double("sigma", 10.0), seed);
    }
    const double k0 = std::max(1.0, double(inst.design.cols()) / 2.0);
    built.problem = build_segmented_regression(inst, k0);
  } else if (app == "trend") {
    Eigen::VectorXd series;
    if (!data.empty()) {
      series = io::load_series(data);
    } else {
      series = generate_piecewise_linear_series(
          config.get_long("n", 300), int(config.get_long("kinks", 8)),
          config.get_double("sigma", 0.05), seed);
    }
    const double k0 = std::max(1.0, double(series.size() - 2) / 2.0);
    built.problem = build_trend_filtering(series, k0,
                                          config.get_double("box_radius", 100.0));
  } else if (app == "mrf") {
    MrfInstance inst;
    if (!data.empty()) {
      const auto parts = split(data, ',');
      if (parts.size() != 2) {
        throw_error(ErrorCode::kInvalidArgument,
                    "mrf data wants 'laplacian.csv,unary.csv'");
      }
      inst.laplacian = io::load_csv_matrix(parts[0]);
      inst.unary = io::load_csv_matrix(parts[1]).col(0);
    } else {
      inst = generate_mrf(config.get_long("n", 12), seed);
    }
    built.problem = build_mrf(inst.laplacian, inst.unary);
    built.mrf = std::move(inst);
  } else if (app == "l0tv") {
    ImageInstance image;
    const double fraction = config.get_double("noise_fraction", 0.3);
    if (!data.empty()) {
      io::PgmImage pgm = io::load_pgm(data);
      image = make_impulse_noisy(pgm.height, pgm.width, pgm.pixels, fraction, seed);
    } else {
      ImageInstance clean = generate_piecewise_constant_image(
          config.get_long("height", 32), config.get_long("width", 32),
          int(config.get_long("blocks", 6)), seed);
      image = make_impulse_noisy(clean.height, clean.width, clean.clean,
                                 fraction, seed + 1);
    }
    const Eigen::Index npix = image.height * image.width;
    const double k0 = std::max(1.0, std::floor(fraction * double(npix)));
    built.problem = build_l0tv(image, std::min(k0, double(npix - 1)),
                               int(config.get_long("tv_p", 2)));
    built.image = std::move(image);
  } else {
    throw_error(ErrorCode::kInvalidArgument, "unknown application '" + app + "'");
  }
  return built;
}

namespace {

SolverConfig solver_config_for(const std::string& method,
                               const ExperimentConfig& config) {
  SolverConfig sc;
  sc.rho0 = config.get_scoped(method, "rho0", sc.rho0);
  sc.mu = config.get_scoped(method, "mu", sc.mu);
  sc.alpha = config.get_scoped(method, "alpha", sc.alpha);
  sc.eta = config.get_scoped(method, "eta", sc.eta);
  sc.penalty_cadence =
      int(config.get_scoped(method, "cadence", sc.penalty_cadence));
  sc.eps_gap = config.get_scoped(method, "eps_gap", sc.eps_gap);
  sc.eps_x = config.get_scoped(method, "eps_x", sc.eps_x);
  sc.max_outer = int(config.get_scoped(method, "max_outer", sc.max_outer));
  sc.inner_tol = config.get_scoped(method, "inner_tol", sc.inner_tol);
  sc.inner_max_iter =
      int(config.get_scoped(method, "inner_max_iter", sc.inner_max_iter));
  sc.rho_max = config.get_scoped(method, "rho_max", sc.rho_max);
  return sc;
}

BaselineConfig baseline_config_for(const std::string& method,
                                   const ExperimentConfig& config) {
  BaselineConfig bc;
  bc.penalty_growth =
      config.get_scoped(method, "penalty_growth", bc.penalty_growth);
  bc.cadence = int(config.get_scoped(method, "cadence", bc.cadence));
  bc.eps_gap = config.get_scoped(method, "eps_gap", bc.eps_gap);
  bc.eps_x = config.get_scoped(method, "eps_x", bc.eps_x);
  bc.max_outer = int(config.get_scoped(method, "max_outer", bc.max_outer));
  bc.inner_tol = config.get_scoped(method, "inner_tol", bc.inner_tol);
  bc.inner_max_iter =
      int(config.get_scoped(method, "inner_max_iter", bc.inner_max_iter));
  bc.mu = config.get_scoped(method, "mu", bc.mu);
  bc.polish = config.get_scoped(method, "polish", 1.0) != 0.0;
  return bc;
}

}  // namespace

SolveResult run_method(const std::string& method, const BuiltProblem& built,
                       double k, const ExperimentConfig& config) {
  SparsityProblem problem = built.problem;
  problem.k = k;
  if (config.has("sigma_override")) {
    problem.sigma_override = config.get_double("sigma_override", 0.0);
  }
  if (method == "mpec_epm") return epm_solve(problem, solver_config_for(method, config));
  if (method == "mpec_adm") return adm_solve(problem, solver_config_for(method, config));
  if (method == "greedy") return greedy_solve(problem, baseline_config_for(method, config));
  if (method == "qpm") return qpm_solve(problem, baseline_config_for(method, config));
  if (method == "di_adm") return di_adm_solve(problem, baseline_config_for(method, config));
  if (method == "md_adm") return md_adm_solve(problem, baseline_config_for(method, config));
  if (method == "cvx_sweep") return cvx_sweep_solve(problem, baseline_config_for(method, config));
  throw_error(ErrorCode::kUnknownMethod, "unknown method '" + method + "'");
}

namespace {

std::vector<double> resolve_k_grid(const ExperimentConfig& config,
                                   const BuiltProblem& built) {
  const Eigen::Index m = built.problem.constraint_map.rows();
  std::vector<double> ks;
  const std::string grid = config.get("k_grid", config.get("k", ""));
  if (grid.empty()) {
    // Default fractional sweep over the constraint rows.
    for (double f : default_sparsity_fractions()) {
      double k = std::round(f * double(m));
      k = std::min(std::max(k, 1.0), double(m - 1));
      if (ks.empty() || ks.back() != k) ks.push_back(k);
    }
    return ks;
  }
  for (const std::string& tok : split(grid, ',')) {
    double v = 0.0;
    try {
      v = std::stod(tok);
    } catch (const std::logic_error&) {
      throw_error(ErrorCode::kParse, "bad k value '" + tok + "'");
    }
    double k = tok.find('.') != std::string::npos ? std::round(v * double(m)) : v;
    if (!(k > 0.0) || k >= double(m)) {
      throw_error(ErrorCode::kInvalidArgument,
                  "k = " + format_double(k) + " outside (0, " +
                      std::to_string(m) + ")");
    }
    ks.push_back(k);
  }
  return ks;
}

ResultRow make_row(const std::string& method, double k, uint64_t seed,
                   const BuiltProblem& built, const SolveResult& result,
                   double wall_ms) {
  ResultRow row;
  row.method = method;
  row.k = k;
  row.seed = seed;
  row.objective = result.objective;
  row.l0 = result.l0_achieved;
  if (built.mrf) {
    // MRF rows report the decoded binary labelling: its objective and its
    // (always-feasible) sparsity count.
    Eigen::VectorXd labels = mrf_decode(result.x);
    row.objective = mrf_objective(built.mrf->laplacian, built.mrf->unary, labels);
    row.l0 = count_l0(built.problem.constraint_map.apply(mrf_encode(labels)));
  }
  row.gap = result.complementarity_gap;
  row.iterations = result.outer_iterations;
  row.converged = result.converged;
  row.wall_ms = wall_ms;
  if (built.image) {
    row.snr = snr_metrics(result.x, built.image->clean);
  }
  return row;
}

}  // namespace

namespace {

struct GridCell {
  std::string method;
  double k;
  uint64_t seed;
};

BenchOutcome run_cells(const ExperimentConfig& config,
                       std::vector<GridCell>* cells_out,
                       std::vector<std::vector<TraceRecord>>* traces_out) {
  const std::vector<std::string> methods = split(config.get("methods", ""), ',');
  if (methods.empty()) {
    throw_error(ErrorCode::kInvalidArgument, "config needs a 'methods' list");
  }
  const uint64_t base_seed = resolve_seed(config);
  const long num_seeds = std::max(1L, config.get_long("seeds", 1));
  const int jobs = int(std::max(1L, config.get_long("jobs", 1)));

  std::vector<GridCell> cells;
  std::vector<std::pair<uint64_t, BuiltProblem>> problems;
  for (long s = 0; s < num_seeds; ++s) {
    const uint64_t seed = base_seed + uint64_t(s);
    problems.emplace_back(seed, build_problem(config, seed));
    const std::vector<double> ks = resolve_k_grid(config, problems.back().second);
    for (const std::string& method : methods) {
      for (double k : ks) cells.push_back({method, k, seed});
    }
  }

  auto problem_for = [&problems](uint64_t seed) -> const BuiltProblem& {
    for (const auto& [s, p] : problems) {
      if (s == seed) return p;
    }
    throw_error(ErrorCode::kInvalidArgument, "internal: missing problem");
  };

  std::vector<ResultRow> rows(cells.size());
  std::vector<std::vector<TraceRecord>> traces(traces_out ? cells.size() : 0);
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= cells.size() || failed.load()) break;
      const GridCell& cell = cells[i];
      try {
        const auto t0 = std::chrono::steady_clock::now();
        SolveResult result =
            run_method(cell.method, problem_for(cell.seed), cell.k, config);
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        rows[i] = make_row(cell.method, cell.k, cell.seed,
                           problem_for(cell.seed), result, ms);
        if (traces_out) traces[i] = std::move(result.trace);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failure = std::string(cell.method) + ": " + e.what();
        failed.store(true);
        break;
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw_error(ErrorCode::kInvalidArgument, failure);

  BenchOutcome outcome;
  outcome.rows = std::move(rows);
  for (const ResultRow& row : outcome.rows) {
    if (!row.converged) outcome.any_unconverged = true;
  }
  if (cells_out) *cells_out = std::move(cells);
  if (traces_out) *traces_out = std::move(traces);
  return outcome;
}

}  // namespace

BenchOutcome run_experiment(const ExperimentConfig& config) {
  return run_cells(config, nullptr, nullptr);
}

std::string render_results_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "method,k,seed,objective,l0,gap,iterations,converged,snr0,snr1,snr2\n";
  for (const ResultRow& r : rows) {
    out << r.method << ',' << format_double(r.k) << ',' << r.seed << ','
        << format_double(r.objective) << ',' << r.l0 << ','
        << format_double(r.gap) << ',' << r.iterations << ','
        << (r.converged ? 1 : 0) << ',';
    if (r.snr) {
      out << format_double(r.snr->snr0) << ',' << format_double(r.snr->snr1)
          << ',' << format_double(r.snr->snr2);
    } else {
      out << ",,";
    }
    out << '\n';
  }
  return out.str();
}

std::vector<ResultRow> parse_results_csv(const std::string& text) {
  std::vector<ResultRow> rows;
  std::stringstream ss(text);
  std::string line;
  bool header = true;
  long lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (header) {
      header = false;
      continue;
    }
    if (trim(line).empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) cols.push_back(tok);
    if (cols.size() < 8 || cols.size() > 11) {
      throw_error(ErrorCode::kParse, "results.csv:" + std::to_string(lineno) +
                                         ": expected 11 columns");
    }
    while (cols.size() < 11) cols.push_back("");  // trailing empties dropped by getline
    ResultRow r;
    r.method = cols[0];
    r.k = std::stod(cols[1]);
    r.seed = std::stoull(cols[2]);
    r.objective = std::stod(cols[3]);
    r.l0 = std::stol(cols[4]);
    r.gap = std::stod(cols[5]);
    r.iterations = int(std::stol(cols[6]));
    r.converged = cols[7] == "1";
    if (!cols[8].empty()) {
      SnrMetrics snr;
      snr.snr0 = std::stod(cols[8]);
      snr.snr1 = std::stod(cols[9]);
      snr.snr2 = std::stod(cols[10]);
      r.snr = snr;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ResultRow> load_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorCode::kIo, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_results_csv(buf.str());
}

std::string compare_report(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw_error(ErrorCode::kInvalidArgument, "report: no rows");
  std::vector<std::string> methods;
  std::vector<double> ks;
  for (const ResultRow& r : rows) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
      methods.push_back(r.method);
    }
    if (std::find(ks.begin(), ks.end(), r.k) == ks.end()) ks.push_back(r.k);
  }
  std::sort(ks.begin(), ks.end());

  // Median objective per (method, k) over seeds.
  auto median_obj = [&rows](const std::string& method, double k,
                            bool* any) -> double {
    std::vector<double> vals;
    for (const ResultRow& r : rows) {
      if (r.method == method && r.k == k) vals.push_back(r.objective);
    }
    *any = !vals.empty();
    if (vals.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(vals.begin(), vals.end());
    const size_t mid = vals.size() / 2;
    return vals.size() % 2 == 1 ? vals[mid]
                                : 0.5 * (vals[mid - 1] + vals[mid]);
  };

  std::map<std::string, double> wins;
  for (const std::string& m : methods) wins[m] = 0.0;

  std::ostringstream out;
  out << "k";
  for (const std::string& m : methods) out << '\t' << m;
  out << '\n';
  for (double k : ks) {
    std::vector<double> vals(methods.size(),
                             std::numeric_limits<double>::quiet_NaN());
    double best = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < methods.size(); ++j) {
      bool any = false;
      vals[j] = median_obj(methods[j], k, &any);
      if (any && vals[j] < best) best = vals[j];
    }
    std::vector<size_t> winners;
    for (size_t j = 0; j < methods.size(); ++j) {
      if (std::isfinite(vals[j]) && vals[j] <= best + 1e-12 * (1.0 + std::abs(best))) {
        winners.push_back(j);
      }
    }
    for (size_t j : winners) wins[methods[j]] += 1.0 / double(winners.size());
    out << format_double(k);
    for (size_t j = 0; j < methods.size(); ++j) {
      out << '\t';
      if (!std::isfinite(vals[j])) {
        out << "-";
        continue;
      }
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.6g", vals[j]);
      out << buf;
      if (std::find(winners.begin(), winners.end(), j) != winners.end()) out << '*';
    }
    out << '\n';
  }
  out << "\nwinner counts (ties split):\n";
  for (const std::string& m : methods) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", wins[m]);
    out << "  " << m << ": " << buf << '\n';
  }
  return out.str();
}

void write_trace_csv(const std::string& path, const SolveResult& result,
                     const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) throw_error(ErrorCode::kIo, "cannot write " + path);
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  out << "iteration,objective,gap,penalty,wall_ms\n";
  for (const TraceRecord& t : result.trace) {
    out << t.iteration << ',' << format_double(t.objective) << ','
        << format_double(t.gap) << ',' << format_double(t.penalty) << ','
        << format_double(t.wall_ms) << '\n';
  }
}

BenchOutcome run_bench(const ExperimentConfig& config, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<GridCell> cells;
  std::vector<std::vector<TraceRecord>> traces;
  const bool want_traces = config.get("traces", "1") != "0";
  BenchOutcome outcome =
      run_cells(config, &cells, want_traces ? &traces : nullptr);

  {
    std::ofstream out(fs::path(out_dir) / "results.csv");
    if (!out) throw_error(ErrorCode::kIo, "cannot write results.csv");
    out << render_results_csv(outcome.rows);
  }
  {
    std::ofstream out(fs::path(out_dir) / "timings.csv");
    out << "method,k,seed,wall_ms\n";
    for (const ResultRow& r : outcome.rows) {
      out << r.method << ',' << format_double(r.k) << ',' << r.seed << ','
          << format_double(r.wall_ms) << '\n';
    }
  }

  if (want_traces) {
    std::ostringstream echo;
    echo << "rho0=" << config.get_scoped("mpec_epm", "rho0", 0.01)
         << " mu=" << config.get_scoped("mpec_epm", "mu", 0.01)
         << " alpha=" << config.get_scoped("mpec_adm", "alpha", 0.01)
         << " eta=" << config.get_scoped("mpec_adm", "eta", 0.01);
    for (size_t i = 0; i < cells.size(); ++i) {
      SolveResult shim;
      shim.trace = std::move(traces[i]);
      std::ostringstream name;
      name << "trace_" << cells[i].method << "_k" << cells[i].k << "_seed"
           << cells[i].seed << ".csv";
      write_trace_csv((fs::path(out_dir) / name.str()).string(), shim,
                      echo.str());
    }
  }

  // plot.dat: one column of k, then the per-method median objective.
  {
    std::vector<std::string> methods = split(config.get("methods", ""), ',');
    std::vector<double> ks;
    for (const ResultRow& r : outcome.rows) {
      if (std::find(ks.begin(), ks.end(), r.k) == ks.end()) ks.push_back(r.k);
    }
    std::sort(ks.begin(), ks.end());
    std::ofstream out(fs::path(out_dir) / "plot.dat");
    out << "# k";
    for (const std::string& m : methods) out << ' ' << m;
    out << '\n';
    for (double k : ks) {
      out << format_double(k);
      for (const std::string& m : methods) {
        std::vector<double> vals;
        for (const ResultRow& r : outcome.rows) {
          if (r.method == m && r.k == k) vals.push_back(r.objective);
        }
        std::sort(vals.begin(), vals.end());
        if (vals.empty()) {
          out << " nan";
        } else {
          const size_t mid = vals.size() / 2;
          const double med = vals.size() % 2 == 1
                                 ? vals[mid]
                                 : 0.5 * (vals[mid - 1] + vals[mid]);
          out << ' ' << format_double(med);
        }
      }
      out << '\n';
    }
  }
  return outcome;
}

}  // namespace smp::harness
