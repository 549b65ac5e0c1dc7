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

#ifndef SPARSEMP_MPEC_HPP_
#define SPARSEMP_MPEC_HPP_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sparsemp/inner_solver.hpp"

namespace smp {

// min f(x)  s.t.  || A x + b ||_0 <= k, with convex L-Lipschitz f.
struct SparsityProblem {
  ObjectiveSpec objective;
  AffineMap constraint_map;
  double k = 0.0;
  std::optional<double> sigma_override;

  void validate() const;
};

struct SolverConfig {
  double rho0 = 0.01;       // initial exact-penalty weight
  double mu = 0.01;         // proximal constant of both solvers
  double alpha = 0.01;      // augmented-Lagrangian penalty (constant)
  double eta = 0.01;        // multiplier initialisation pi^0 = eta * 1
  int penalty_cadence = 30; // T: outer iterations between rho doublings
  double eps_gap = 1e-6;
  double eps_x = 1e-6;
  // The constant-alpha multiplier ramp of the alternating direction method
  // moves by O(alpha * |Ax|) per iteration; driving every off-support entry
  // of Ax below the counting threshold routinely takes a few thousand outer
  // iterations at alpha = 0.01.
  int max_outer = 5000;
  double inner_tol = 1e-6;
  int inner_max_iter = 2000;
  // Inner tolerance used once the outer criteria first hold; the final
  // iterates get re-solved at this accuracy so the sparsity pattern is clean
  // at the counting threshold.
  double inner_tol_final = 1e-11;
  // Penalty ceiling used when sigma(A) is unavailable (rank(A) < m).
  double rho_max = 1e4;
  // ||.||_0 counting: |z_i| > l0_threshold * (1 + ||z||_inf) is nonzero.
  double l0_threshold = 1e-8;
};

struct TraceRecord {
  int iteration = 0;
  double objective = 0.0;
  double gap = 0.0;
  double penalty = 0.0;  // rho for EPM, max(pi) for ADM, beta for baselines
  double wall_ms = 0.0;
};

struct EpmDiagnostics {
  double rho_final = 0.0;
  double rho_cap = 0.0;
  int penalty_updates = 0;
  bool sigma_ok = false;     // sigma(A) available (estimated or overridden)
  double sigma_used = 0.0;
  double max_x_norm = 0.0;   // running max of ||x^t||, the delta of the
                             // outer-iteration bound
  Eigen::VectorXd u_final;
};

struct AdmDiagnostics {
  // aug_lagrangian[0] is L at the initial point; entry t+1 matches outer
  // iteration t. dw/dpi are squared step norms, aligned with entry t+1.
  std::vector<double> aug_lagrangian;
  std::vector<double> dw_norm2;
  std::vector<double> dpi_norm2;
  std::vector<double> min_pi_step;  // min_i (pi^{t+1} - pi^t)_i
  Eigen::VectorXd v_final;
  Eigen::VectorXd pi_final;
};

struct SolveResult {
  std::string method;
  Eigen::VectorXd x;
  double objective = 0.0;
  Eigen::Index l0_achieved = 0;
  double complementarity_gap = 0.0;
  int outer_iterations = 0;
  bool converged = false;
  std::vector<TraceRecord> trace;
  std::optional<EpmDiagnostics> epm;
  std::optional<AdmDiagnostics> adm;
};

// Exact penalty method on the non-separable reformulation: alternating
// proximal minimisation of f(x) + rho (||Ax+b||_1 - <Ax+b, u>) over x and
// u in {||u||_1 <= k, -1 <= u <= 1}, with rho <- min(cap, 2 rho) every
// penalty_cadence iterations.
SolveResult epm_solve(const SparsityProblem& problem, const SolverConfig& config);

// Alternating direction method on the separable reformulation with augmented
// Lagrangian f(x) + <|Ax+b| .* v, pi> + alpha/2 ||(|Ax+b|) .* v||^2 over
// v in {<1, 1-v> <= k, 0 <= v <= 1} and multiplier update
// pi <- pi + alpha |Ax+b| .* v.
SolveResult adm_solve(const SparsityProblem& problem, const SolverConfig& config);

struct EpmState {
  Eigen::VectorXd x;
  Eigen::VectorXd u;
  double rho = 0.0;
  int t = 0;
};

struct AdmState {
  Eigen::VectorXd x;
  Eigen::VectorXd v;
  Eigen::VectorXd pi;
  double alpha = 0.0;
  int t = 0;
};

struct KktResiduals {
  double stationarity = 0.0;     // prox-fixed-point residual of the x block
  double feasibility = 0.0;      // complementarity gap / ||(|Ax|) .* v||_inf
  double dual_feasibility = 0.0; // violation of u in Theta / v in Omega, pi >= 0
};

KktResiduals kkt_residuals(const EpmState& state, const SparsityProblem& problem,
                           const SolverConfig& config = {});
KktResiduals kkt_residuals(const AdmState& state, const SparsityProblem& problem,
                           const SolverConfig& config = {});

// Number of entries with |z_i| > threshold * (1 + ||z||_inf).
Eigen::Index count_l0(const Eigen::VectorXd& z, double threshold = 1e-8);

// Penalty ceiling (1 + 1e-6) * L / sigma(A); falls back to config.rho_max
// with *sigma_ok = false when the rank assumption fails and no override is
// given.
double epm_rho_cap(const SparsityProblem& problem, const SolverConfig& config,
                   bool* sigma_ok, double* sigma_used);

// Subproblem builders for the two x-updates (the returned struct borrows the
// problem's objective and constraint map).
WeightedL1Subproblem epm_x_subproblem(const SparsityProblem& problem,
                                      const Eigen::VectorXd& u, double rho,
                                      const Eigen::VectorXd& x_anchor,
                                      const SolverConfig& config);
WeightedL1Subproblem adm_x_subproblem(const SparsityProblem& problem,
                                      const Eigen::VectorXd& v,
                                      const Eigen::VectorXd& pi, double alpha,
                                      const Eigen::VectorXd& x_anchor,
                                      const SolverConfig& config);

}  // namespace smp

#endif  // SPARSEMP_MPEC_HPP_
