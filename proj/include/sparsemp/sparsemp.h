/* Copyright 2026 The sparsemp Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the sparsemp shared library.
 *
 * Problems are built through one of the smp_problem_* constructors and solved
 * with smp_solve; results are queried through accessors on the opaque
 * smp_result handle. All functions return SMP_OK on success; smp_last_error()
 * carries the message of the most recent failure on the calling thread.
 *
 * Handles are not thread-safe individually, but distinct problems/results may
 * be used from distinct threads concurrently, and one problem may be solved
 * from several threads at once.
 */

#ifndef SPARSEMP_SPARSEMP_H_
#define SPARSEMP_SPARSEMP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SMP_API __declspec(dllexport)
#else
#define SMP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum smp_status {
  SMP_OK = 0,
  SMP_ERROR_INVALID_ARGUMENT = 1,
  SMP_ERROR_DIMENSION_MISMATCH = 2,
  SMP_ERROR_INFEASIBLE = 3,
  SMP_ERROR_RANK_DEFICIENT = 4,
  SMP_ERROR_PARSE = 5,
  SMP_ERROR_IO = 6,
  SMP_ERROR_DIVERGED = 7,
  SMP_ERROR_UNKNOWN_METHOD = 8,
  SMP_ERROR_UNCONVERGED = 9,
  SMP_ERROR_INTERNAL = 10
} smp_status;

typedef struct smp_problem smp_problem;
typedef struct smp_result smp_result;

SMP_API const char* smp_version(void);
SMP_API const char* smp_status_string(smp_status status);
/* Message of the last failure on this thread; empty string if none. */
SMP_API const char* smp_last_error(void);

/* ------------------------------------------------------------------ */
/* Solver options (plain struct, value semantics).                     */

typedef struct smp_solver_options {
  double rho0;            /* initial exact-penalty weight        */
  double mu;              /* proximal constant                   */
  double alpha;           /* augmented-Lagrangian penalty        */
  double eta;             /* multiplier initialisation           */
  int penalty_cadence;    /* outer iterations between rho bumps  */
  double eps_gap;
  double eps_x;
  int max_outer;
  double inner_tol;
  int inner_max_iter;
  double rho_max;         /* penalty ceiling without sigma(A)    */
  double sigma_override;  /* <= 0: estimate sigma(A) internally  */
  int polish;             /* baselines: support-restricted polish */
} smp_solver_options;

SMP_API void smp_solver_options_defaults(smp_solver_options* options);

/* ------------------------------------------------------------------ */
/* Problem constructors. Matrices are dense row-major.                 */

typedef enum smp_loss { SMP_LOSS_LOGISTIC = 0, SMP_LOSS_HINGE = 1 } smp_loss;

SMP_API smp_status smp_problem_feature_selection(
    const double* features, size_t samples, size_t n, const double* labels,
    double lambda, smp_loss loss, smp_problem** out);

SMP_API smp_status smp_problem_feature_selection_libsvm(
    const char* path, double lambda, smp_loss loss, smp_problem** out);

SMP_API smp_status smp_problem_segmented_regression(
    const double* design, size_t m, size_t n, const double* observations,
    smp_problem** out);

SMP_API smp_status smp_problem_segmented_regression_synthetic(
    size_t n, double sigma, uint64_t seed, smp_problem** out);

SMP_API smp_status smp_problem_trend_filtering(const double* series, size_t n,
                                               smp_problem** out);

SMP_API smp_status smp_problem_trend_filtering_file(const char* path,
                                                    smp_problem** out);

SMP_API smp_status smp_problem_mrf(const double* laplacian, size_t n,
                                   const double* unary, smp_problem** out);

/* Impulse-noise removal; clean may be NULL when no reference exists (SNR
 * metrics are then unavailable). p is the TV exponent, 1 or 2. */
SMP_API smp_status smp_problem_l0tv(const double* noisy, const double* clean,
                                    size_t height, size_t width, int p,
                                    smp_problem** out);

SMP_API smp_status smp_problem_l0tv_pgm(const char* pgm_path,
                                        double noise_fraction, uint64_t seed,
                                        int p, smp_problem** out);

/* min 1/2 sum_i h_i (x_i - c_i)^2 s.t. ||x||_0 <= k; handy for smoke tests. */
SMP_API smp_status smp_problem_diag_quadratic(const double* curvature,
                                              const double* center, size_t n,
                                              smp_problem** out);

SMP_API void smp_problem_destroy(smp_problem* problem);
SMP_API size_t smp_problem_dim(const smp_problem* problem);        /* cols(A) */
SMP_API size_t smp_problem_constraint_rows(const smp_problem* problem);

/* ------------------------------------------------------------------ */
/* Solving.                                                            */

/* method: mpec_epm | mpec_adm | greedy | qpm | di_adm | md_adm | cvx_sweep.
 * k is the sparsity budget (0 < k < constraint rows). options may be NULL
 * for defaults. An unconverged run still returns SMP_OK with the flag set on
 * the result. */
SMP_API smp_status smp_solve(const smp_problem* problem, const char* method,
                             const smp_solver_options* options, double k,
                             smp_result** out);

SMP_API void smp_result_destroy(smp_result* result);
SMP_API double smp_result_objective(const smp_result* result);
SMP_API int64_t smp_result_l0(const smp_result* result);
SMP_API double smp_result_gap(const smp_result* result);
SMP_API int smp_result_iterations(const smp_result* result);
SMP_API int smp_result_converged(const smp_result* result);
SMP_API size_t smp_result_solution_size(const smp_result* result);
SMP_API smp_status smp_result_solution(const smp_result* result, double* buffer,
                                       size_t length);
/* snr{0,1,2}; NaN when the problem has no clean reference image. */
SMP_API double smp_result_snr(const smp_result* result, int which);
SMP_API smp_status smp_result_write_trace_csv(const smp_result* result,
                                              const char* path);

/* ------------------------------------------------------------------ */
/* Experiment harness: flat key=value configuration, same schema as the
 * config files (application, methods, k_grid, seed, seeds, jobs, ...).   */

SMP_API smp_status smp_bench_run(const char* const* keys,
                                 const char* const* values, size_t count,
                                 const char* out_dir, int* any_unconverged);

SMP_API smp_status smp_bench_run_file(const char* config_path,
                                      const char* const* override_keys,
                                      const char* const* override_values,
                                      size_t override_count, const char* out_dir,
                                      int* any_unconverged);

/* Renders the aggregate comparison table for a results.csv file. The returned
 * string must be released with smp_string_free. */
SMP_API smp_status smp_report_render(const char* results_csv_path, char** out);
SMP_API void smp_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* SPARSEMP_SPARSEMP_H_ */
