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

#ifndef SPARSEMP_BASELINES_HPP_
#define SPARSEMP_BASELINES_HPP_

#include <vector>

#include "sparsemp/mpec.hpp"

namespace smp {

enum class BaselineMethod { kGreedy, kQpm, kDiAdm, kMdAdm, kCvxSweep };

struct BaselineConfig {
  BaselineMethod method = BaselineMethod::kGreedy;
  double penalty_growth = 3.1622776601683795;  // sqrt(10)
  int cadence = 30;
  std::vector<double> lambda_grid;  // empty: default_lambda_grid()
  double eps_gap = 1e-6;
  double eps_x = 1e-6;
  int max_outer = 500;
  double inner_tol = 1e-6;
  int inner_max_iter = 2000;
  double mu = 0.01;  // proximal anchor of the inner x-solves
  double l0_threshold = 1e-8;
  // Support-restricted re-minimisation of f after the final thresholding.
  // Applied uniformly so objective comparisons stay fair; turn off for strict
  // replication of the plain methods.
  bool polish = true;
};

// 2^{-10}, 2^{-8}, ..., 2^{10}.
std::vector<double> default_lambda_grid();

// Hard-thresholding gradient descent x <- H_k(x - f'(x)/L_f). Requires an
// identity constraint map without offset and a smooth objective.
SolveResult greedy_solve(const SparsityProblem& problem, const BaselineConfig& config);

// Quadratic penalty method: block descent on f(x) + beta/2 ||Ax+b-y||^2 with
// ||y||_0 <= k, beta growing by penalty_growth every cadence iterations.
SolveResult qpm_solve(const SparsityProblem& problem, const BaselineConfig& config);

// ADM on the splitting y = Ax+b with the l0-ball indicator on y.
SolveResult di_adm_solve(const SparsityProblem& problem, const BaselineConfig& config);

// Same iteration as di_adm_solve, but the output is the running arithmetic
// mean of the iterates, hard-projected back to feasibility.
SolveResult md_adm_solve(const SparsityProblem& problem, const BaselineConfig& config);

// Convex l1 sweep: solves f(x) + lambda ||Ax+b||_1 for each lambda in the
// grid, hard-thresholds, polishes, and returns the best final objective.
SolveResult cvx_sweep_solve(const SparsityProblem& problem, const BaselineConfig& config);

// Minimises f over { x : (Ax+b)_i = 0 for i outside the support }, started
// from x_init. Identity constraint maps get the off-support coordinates
// snapped exactly.
Eigen::VectorXd polish_on_support(const SparsityProblem& problem,
                                  const std::vector<bool>& support,
                                  const Eigen::VectorXd& x_init,
                                  const BaselineConfig& config);

// Mask of the k largest-magnitude entries (ties to the lower index).
std::vector<bool> top_k_support(const Eigen::VectorXd& z, Eigen::Index k);

}  // namespace smp

#endif  // SPARSEMP_BASELINES_HPP_
