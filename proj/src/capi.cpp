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

#include "sparsemp/sparsemp.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "sparsemp/harness.hpp"
#include "sparsemp/io.hpp"

namespace {

thread_local std::string g_last_error;

smp_status code_to_status(smp::ErrorCode code) {
  switch (code) {
    case smp::ErrorCode::kInvalidArgument: return SMP_ERROR_INVALID_ARGUMENT;
    case smp::ErrorCode::kDimensionMismatch: return SMP_ERROR_DIMENSION_MISMATCH;
    case smp::ErrorCode::kInfeasible: return SMP_ERROR_INFEASIBLE;
    case smp::ErrorCode::kRankDeficient: return SMP_ERROR_RANK_DEFICIENT;
    case smp::ErrorCode::kParse: return SMP_ERROR_PARSE;
    case smp::ErrorCode::kIo: return SMP_ERROR_IO;
    case smp::ErrorCode::kDiverged: return SMP_ERROR_DIVERGED;
    case smp::ErrorCode::kUnknownMethod: return SMP_ERROR_UNKNOWN_METHOD;
  }
  return SMP_ERROR_INTERNAL;
}

template <typename Fn>
smp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SMP_OK;
  } catch (const smp::Error& e) {
    g_last_error = e.what();
    return code_to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SMP_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return SMP_ERROR_INTERNAL;
  }
}

Eigen::MatrixXd map_row_major(const double* data, size_t rows, size_t cols) {
  if (data == nullptr) {
    smp::throw_error(smp::ErrorCode::kInvalidArgument, "null matrix pointer");
  }
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(
      data, Eigen::Index(rows), Eigen::Index(cols));
}

Eigen::VectorXd map_vector(const double* data, size_t n) {
  if (data == nullptr) {
    smp::throw_error(smp::ErrorCode::kInvalidArgument, "null vector pointer");
  }
  return Eigen::Map<const Eigen::VectorXd>(data, Eigen::Index(n));
}

}  // namespace

struct smp_problem {
  smp::harness::BuiltProblem built;
};

struct smp_result {
  smp::SolveResult result;
  std::optional<smp::SnrMetrics> snr;
};

extern "C" {

const char* smp_version(void) { return "0.1.0"; }

const char* smp_status_string(smp_status status) {
  switch (status) {
    case SMP_OK: return "ok";
    case SMP_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case SMP_ERROR_DIMENSION_MISMATCH: return "dimension mismatch";
    case SMP_ERROR_INFEASIBLE: return "infeasible";
    case SMP_ERROR_RANK_DEFICIENT: return "rank deficient";
    case SMP_ERROR_PARSE: return "parse error";
    case SMP_ERROR_IO: return "io error";
    case SMP_ERROR_DIVERGED: return "diverged";
    case SMP_ERROR_UNKNOWN_METHOD: return "unknown method";
    case SMP_ERROR_UNCONVERGED: return "unconverged";
    case SMP_ERROR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* smp_last_error(void) { return g_last_error.c_str(); }

void smp_solver_options_defaults(smp_solver_options* options) {
  if (options == nullptr) return;
  smp::SolverConfig d;
  options->rho0 = d.rho0;
  options->mu = d.mu;
  options->alpha = d.alpha;
  options->eta = d.eta;
  options->penalty_cadence = d.penalty_cadence;
  options->eps_gap = d.eps_gap;
  options->eps_x = d.eps_x;
  options->max_outer = d.max_outer;
  options->inner_tol = d.inner_tol;
  options->inner_max_iter = d.inner_max_iter;
  options->rho_max = d.rho_max;
  options->sigma_override = 0.0;
  options->polish = 1;
}

smp_status smp_problem_feature_selection(const double* features, size_t samples,
                                         size_t n, const double* labels,
                                         double lambda, smp_loss loss,
                                         smp_problem** out) {
  return guarded([&] {
    smp::FeatureSelectionData data;
    data.features = map_row_major(features, samples, n);
    data.labels = map_vector(labels, samples);
    data.lambda = lambda;
    auto p = std::make_unique<smp_problem>();
    p->built.application =
        loss == SMP_LOSS_LOGISTIC ? "feature_logistic" : "feature_hinge";
    p->built.problem = smp::build_feature_selection(
        data,
        loss == SMP_LOSS_LOGISTIC ? smp::LossKind::kLogistic
                                  : smp::LossKind::kHinge,
        std::max(1.0, double(n) / 2.0));
    *out = p.release();
  });
}

smp_status smp_problem_feature_selection_libsvm(const char* path, double lambda,
                                                smp_loss loss,
                                                smp_problem** out) {
  return guarded([&] {
    smp::io::LibsvmData lib = smp::io::load_libsvm(path);
    smp::FeatureSelectionData data;
    data.features = std::move(lib.features);
    data.labels = std::move(lib.labels);
    data.lambda = lambda;
    auto p = std::make_unique<smp_problem>();
    p->built.application =
        loss == SMP_LOSS_LOGISTIC ? "feature_logistic" : "feature_hinge";
    p->built.problem = smp::build_feature_selection(
        data,
        loss == SMP_LOSS_LOGISTIC ? smp::LossKind::kLogistic
                                  : smp::LossKind::kHinge,
        std::max(1.0, double(data.features.cols()) / 2.0));
    *out = p.release();
  });
}

smp_status smp_problem_segmented_regression(const double* design, size_t m,
                                            size_t n, const double* observations,
                                            smp_problem** out) {
  return guarded([&] {
    smp::SegmentedRegressionInstance inst;
    inst.design = map_row_major(design, m, n);
    inst.observations = map_vector(observations, m);
    auto p = std::make_unique<smp_problem>();
    p->built.application = "segreg";
    p->built.problem =
        smp::build_segmented_regression(inst, std::max(1.0, double(n) / 2.0));
    *out = p.release();
  });
}

smp_status smp_problem_segmented_regression_synthetic(size_t n, double sigma,
                                                      uint64_t seed,
                                                      smp_problem** out) {
  return guarded([&] {
    smp::SegmentedRegressionInstance inst =
        smp::generate_segmented_regression(Eigen::Index(n), sigma, seed);
    auto p = std::make_unique<smp_problem>();
    p->built.application = "segreg";
    p->built.problem =
        smp::build_segmented_regression(inst, std::max(1.0, double(n) / 2.0));
    *out = p.release();
  });
}

smp_status smp_problem_trend_filtering(const double* series, size_t n,
                                       smp_problem** out) {
  return guarded([&] {
    Eigen::VectorXd y = map_vector(series, n);
    auto p = std::make_unique<smp_problem>();
    p->built.application = "trend";
    p->built.problem =
        smp::build_trend_filtering(y, std::max(1.0, double(n - 2) / 2.0));
    *out = p.release();
  });
}

smp_status smp_problem_trend_filtering_file(const char* path, smp_problem** out) {
  return guarded([&] {
    Eigen::VectorXd y = smp::io::load_series(path);
    auto p = std::make_unique<smp_problem>();
    p->built.application = "trend";
    p->built.problem = smp::build_trend_filtering(
        y, std::max(1.0, double(y.size() - 2) / 2.0));
    *out = p.release();
  });
}

smp_status smp_problem_mrf(const double* laplacian, size_t n, const double* unary,
                           smp_problem** out) {
  return guarded([&] {
    smp::MrfInstance inst;
    inst.laplacian = map_row_major(laplacian, n, n);
    inst.unary = map_vector(unary, n);
    auto p = std::make_unique<smp_problem>();
    p->built.application = "mrf";
    p->built.problem = smp::build_mrf(inst.laplacian, inst.unary);
    p->built.mrf = std::move(inst);
    *out = p.release();
  });
}

smp_status smp_problem_l0tv(const double* noisy, const double* clean,
                            size_t height, size_t width, int p,
                            smp_problem** out) {
  return guarded([&] {
    smp::ImageInstance image;
    image.height = Eigen::Index(height);
    image.width = Eigen::Index(width);
    image.noisy = map_vector(noisy, height * width);
    image.clean = clean ? map_vector(clean, height * width) : image.noisy;
    auto prob = std::make_unique<smp_problem>();
    prob->built.application = "l0tv";
    const double k0 = std::max(1.0, double(height * width) * 0.3);
    prob->built.problem = smp::build_l0tv(
        image, std::min(k0, double(height * width - 1)), p);
    if (clean) prob->built.image = std::move(image);
    *out = prob.release();
  });
}

smp_status smp_problem_l0tv_pgm(const char* pgm_path, double noise_fraction,
                                uint64_t seed, int p, smp_problem** out) {
  return guarded([&] {
    smp::io::PgmImage pgm = smp::io::load_pgm(pgm_path);
    smp::ImageInstance image = smp::make_impulse_noisy(
        pgm.height, pgm.width, pgm.pixels, noise_fraction, seed);
    auto prob = std::make_unique<smp_problem>();
    prob->built.application = "l0tv";
    const Eigen::Index npix = image.height * image.width;
    const double k0 =
        std::max(1.0, std::floor(noise_fraction * double(npix)));
    prob->built.problem =
        smp::build_l0tv(image, std::min(k0, double(npix - 1)), p);
    prob->built.image = std::move(image);
    *out = prob.release();
  });
}

smp_status smp_problem_diag_quadratic(const double* curvature,
                                      const double* center, size_t n,
                                      smp_problem** out) {
  return guarded([&] {
    Eigen::VectorXd h = map_vector(curvature, n);
    Eigen::VectorXd c = map_vector(center, n);
    if (h.minCoeff() <= 0.0) {
      smp::throw_error(smp::ErrorCode::kInvalidArgument,
                       "curvature must be positive");
    }
    auto p = std::make_unique<smp_problem>();
    p->built.application = "diag_quadratic";
    p->built.problem.constraint_map = smp::AffineMap::identity(Eigen::Index(n));
    p->built.problem.k = std::max(1.0, double(n) / 2.0);
    p->built.problem.objective.smooth.push_back(
        smp::make_diag_quadratic_term(h, c));
    p->built.problem.objective.lipschitz_f =
        h.maxCoeff() * (c.norm() + 10.0 * std::sqrt(double(n)));
    *out = p.release();
  });
}

void smp_problem_destroy(smp_problem* problem) { delete problem; }

size_t smp_problem_dim(const smp_problem* problem) {
  return problem ? size_t(problem->built.problem.constraint_map.cols()) : 0;
}

size_t smp_problem_constraint_rows(const smp_problem* problem) {
  return problem ? size_t(problem->built.problem.constraint_map.rows()) : 0;
}

smp_status smp_solve(const smp_problem* problem, const char* method,
                     const smp_solver_options* options, double k,
                     smp_result** out) {
  return guarded([&] {
    if (problem == nullptr || method == nullptr || out == nullptr) {
      smp::throw_error(smp::ErrorCode::kInvalidArgument, "null argument");
    }
    smp::harness::ExperimentConfig config;
    if (options) {
      auto setd = [&config](const char* key, double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        config.set(key, buf);
      };
      setd("rho0", options->rho0);
      setd("mu", options->mu);
      setd("alpha", options->alpha);
      setd("eta", options->eta);
      setd("cadence", double(options->penalty_cadence));
      setd("eps_gap", options->eps_gap);
      setd("eps_x", options->eps_x);
      setd("max_outer", double(options->max_outer));
      setd("inner_tol", options->inner_tol);
      setd("inner_max_iter", double(options->inner_max_iter));
      setd("rho_max", options->rho_max);
      setd("polish", options->polish ? 1.0 : 0.0);
      if (options->sigma_override > 0.0) {
        setd("sigma_override", options->sigma_override);
      }
    }
    auto res = std::make_unique<smp_result>();
    res->result = smp::harness::run_method(method, problem->built, k, config);
    if (problem->built.image) {
      res->snr = smp::snr_metrics(res->result.x, problem->built.image->clean);
    }
    if (problem->built.mrf) {
      res->result.objective =
          smp::mrf_objective(problem->built.mrf->laplacian,
                             problem->built.mrf->unary,
                             smp::mrf_decode(res->result.x));
    }
    *out = res.release();
  });
}

void smp_result_destroy(smp_result* result) { delete result; }

double smp_result_objective(const smp_result* result) {
  return result ? result->result.objective : 0.0;
}

int64_t smp_result_l0(const smp_result* result) {
  return result ? int64_t(result->result.l0_achieved) : -1;
}

double smp_result_gap(const smp_result* result) {
  return result ? result->result.complementarity_gap : 0.0;
}

int smp_result_iterations(const smp_result* result) {
  return result ? result->result.outer_iterations : 0;
}

int smp_result_converged(const smp_result* result) {
  return result && result->result.converged ? 1 : 0;
}

size_t smp_result_solution_size(const smp_result* result) {
  return result ? size_t(result->result.x.size()) : 0;
}

smp_status smp_result_solution(const smp_result* result, double* buffer,
                               size_t length) {
  return guarded([&] {
    if (result == nullptr || buffer == nullptr) {
      smp::throw_error(smp::ErrorCode::kInvalidArgument, "null argument");
    }
    if (length < size_t(result->result.x.size())) {
      smp::throw_error(smp::ErrorCode::kDimensionMismatch, "buffer too small");
    }
    std::memcpy(buffer, result->result.x.data(),
                sizeof(double) * size_t(result->result.x.size()));
  });
}

double smp_result_snr(const smp_result* result, int which) {
  if (result == nullptr || !result->snr) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  switch (which) {
    case 0: return result->snr->snr0;
    case 1: return result->snr->snr1;
    case 2: return result->snr->snr2;
    default: return std::numeric_limits<double>::quiet_NaN();
  }
}

smp_status smp_result_write_trace_csv(const smp_result* result, const char* path) {
  return guarded([&] {
    if (result == nullptr || path == nullptr) {
      smp::throw_error(smp::ErrorCode::kInvalidArgument, "null argument");
    }
    smp::harness::write_trace_csv(path, result->result, "");
  });
}

static smp_status bench_common(smp::harness::ExperimentConfig config,
                               const char* const* keys,
                               const char* const* values, size_t count,
                               const char* out_dir, int* any_unconverged) {
  return guarded([&] {
    for (size_t i = 0; i < count; ++i) {
      if (keys[i] == nullptr || values[i] == nullptr) {
        smp::throw_error(smp::ErrorCode::kInvalidArgument, "null config entry");
      }
      config.set(keys[i], values[i]);
    }
    if (out_dir == nullptr) {
      smp::throw_error(smp::ErrorCode::kInvalidArgument, "null out_dir");
    }
    smp::harness::BenchOutcome outcome =
        smp::harness::run_bench(config, out_dir);
    if (any_unconverged) *any_unconverged = outcome.any_unconverged ? 1 : 0;
  });
}

smp_status smp_bench_run(const char* const* keys, const char* const* values,
                         size_t count, const char* out_dir,
                         int* any_unconverged) {
  return bench_common(smp::harness::ExperimentConfig{}, keys, values, count,
                      out_dir, any_unconverged);
}

smp_status smp_bench_run_file(const char* config_path,
                              const char* const* override_keys,
                              const char* const* override_values,
                              size_t override_count, const char* out_dir,
                              int* any_unconverged) {
  smp::harness::ExperimentConfig config;
  smp_status st = guarded([&] {
    if (config_path == nullptr) {
      smp::throw_error(smp::ErrorCode::kInvalidArgument, "null config path");
    }
    config = smp::harness::ExperimentConfig::from_file(config_path);
  });
  if (st != SMP_OK) return st;
  return bench_common(std::move(config), override_keys, override_values,
                      override_count, out_dir, any_unconverged);
}

smp_status smp_report_render(const char* results_csv_path, char** out) {
  return guarded([&] {
    if (results_csv_path == nullptr || out == nullptr) {
      smp::throw_error(smp::ErrorCode::kInvalidArgument, "null argument");
    }
    const std::string text = smp::harness::compare_report(
        smp::harness::load_results_csv(results_csv_path));
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void smp_string_free(char* text) { delete[] text; }

}  // extern "C"
