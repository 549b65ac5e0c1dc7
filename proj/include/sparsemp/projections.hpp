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

#ifndef SPARSEMP_PROJECTIONS_HPP_
#define SPARSEMP_PROJECTIONS_HPP_

#include <Eigen/Core>

#include "sparsemp/errors.hpp"

namespace smp {

enum class Cmp { kEq, kLe, kGe };

// min_x 1/2 x^T diag(d) x + a^T x  s.t.  0 <= x <= 1, <x,1> cmp s
// with d > 0. The budget s must lie in [0, n] for cmp == kEq.
struct DiagonalQP {
  Eigen::VectorXd d;
  Eigen::VectorXd a;
  double s = 0.0;
  Cmp cmp = Cmp::kLe;
};

// Exact minimizer by breakpoint search in O(n log n): the optimum has the
// water-filling form x_i = clip((-a_i - theta) / d_i, 0, 1) for a single
// multiplier theta (theta = 0 when the budget is inactive under kLe/kGe).
// The 2n breakpoints are the theta values where a coordinate hits a bound;
// between consecutive breakpoints the budget residual is affine in theta and
// the crossing is solved exactly. If theta_out is non-null it receives theta.
Eigen::VectorXd breakpoint_solve(const DiagonalQP& qp, double* theta_out = nullptr);

// argmin_{-1 <= u <= 1, ||u||_1 <= k} 1/2 ||u - z||^2. Solved on |z| via
// breakpoint_solve (d = 1, a = -|z|, cmp = kLe, s = k) with the signs of z
// restored afterwards. k is a real budget; no rounding is applied.
Eigen::VectorXd capped_simplex_project(const Eigen::VectorXd& z, double k);

// Keeps the k largest-magnitude entries and zeroes the rest. Ties are broken
// deterministically in favour of the lower index.
Eigen::VectorXd hard_threshold(const Eigen::VectorXd& x, Eigen::Index k);

// The v-update of the alternating direction solver:
//   argmin_{v in Omega} 1/2 v^T D v + <v, b>,
//   Omega = { <1, 1-v> <= k, 0 <= v <= 1 },
// with d = alpha * abs_ax^2 + mu and b = pi .* abs_ax - mu * v_prev.
Eigen::VectorXd v_subproblem_solve(const Eigen::VectorXd& abs_ax,
                                   const Eigen::VectorXd& pi,
                                   const Eigen::VectorXd& v_prev, double alpha,
                                   double mu, double k);

}  // namespace smp

#endif  // SPARSEMP_PROJECTIONS_HPP_
