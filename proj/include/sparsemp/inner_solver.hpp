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

#ifndef SPARSEMP_INNER_SOLVER_HPP_
#define SPARSEMP_INNER_SOLVER_HPP_

#include <vector>

#include <Eigen/Core>

#include "sparsemp/objective.hpp"

namespace smp {

// Inner convex subproblem shared by the MPEC x-updates and the baselines:
//
//   min_x f(x) + sum_i [ w_i |z_i| + (q_i/2) z_i^2 + g_i z_i ]
//             + (mu/2) ||x - x0||^2,     z = map(x) = A x + b,
//
// with f given as an ObjectiveSpec (smooth terms by gradient, nonsmooth terms
// by prox). w, q must be nonnegative. Empty coefficient vectors mean zero.
struct WeightedL1Subproblem {
  const ObjectiveSpec* objective = nullptr;
  const AffineMap* map = nullptr;  // may be null when w, q, g are all empty
  Eigen::VectorXd w;
  Eigen::VectorXd q;
  Eigen::VectorXd g;
  double mu = 0.0;
  Eigen::VectorXd x0;
  Eigen::VectorXd x_init;  // empty: start from x0
  double tol = 1e-6;
  int max_iter = 2000;
  // Track and return the best objective seen (keeps the returned iterate
  // sequence monotone). Disabled for feasibility-driven polishing solves.
  bool track_best = true;
  bool record_objective_trace = false;
};

// Warm-start state carried between related solves (the affine maps must stay
// identical between calls).
struct InnerState {
  std::vector<Eigen::VectorXd> y;
  std::vector<Eigen::VectorXd> lambda;
  double beta = 0.0;
  double bnorm2 = -1.0;  // cached ||B||^2 for the stacked splitting maps

  // Rescales the duals of block `index` (block 0 is the z-term when present).
  void scale_dual(size_t index, double factor) {
    if (index < lambda.size()) lambda[index] *= factor;
  }
  void clear() {
    y.clear();
    lambda.clear();
    beta = 0.0;
  }
};

struct InnerSolveResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;  // filled when requested
};

// Linearized alternating-direction splitting: each composite term gets a
// splitting variable with its closed-form prox; the smooth part and the
// augmented coupling are handled by a gradient step on x. Throws
// ErrorCode::kDiverged when the objective blows up (bad configuration).
InnerSolveResult solve_weighted_l1(const WeightedL1Subproblem& sub,
                                   InnerState* state = nullptr);

}  // namespace smp

#endif  // SPARSEMP_INNER_SOLVER_HPP_
