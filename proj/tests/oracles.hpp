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

// Test-only reference implementations, kept independent of the library's
// solution paths: exhaustive active-set enumeration for the box QPs, support
// enumeration for toy sparse problems, finite differences for gradients.

#ifndef SPARSEMP_TESTS_ORACLES_HPP_
#define SPARSEMP_TESTS_ORACLES_HPP_

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "sparsemp/projections.hpp"

namespace smp::oracles {

// Global minimizer of 1/2 x^T diag(d) x + a^T x over the box [0,1]^n with the
// budget <x,1> cmp s, by enumerating all 3^n bound patterns x {budget active,
// inactive} and keeping the feasible candidate with the smallest objective.
// Only for n <= 10 or so.
Eigen::VectorXd active_set_qp_solve(const DiagonalQP& qp);

// Best objective over all supports of size <= k for separable quadratics
// f(x) = 1/2 sum h_i (x_i - c_i)^2: the restricted minimizer keeps c on the
// support.
struct SupportEnumeration {
  double objective = 0.0;
  Eigen::VectorXd x;
};
SupportEnumeration best_k_sparse_diag_quadratic(const Eigen::VectorXd& h,
                                                const Eigen::VectorXd& c,
                                                Eigen::Index k);

// Exhaustive binary MRF minimum of 1/2 x^T L x + b^T x over {0,1}^n, n <= 20.
struct MrfBruteForce {
  double objective = 0.0;
  Eigen::VectorXd labels;
};
MrfBruteForce mrf_brute_force(const Eigen::MatrixXd& laplacian,
                              const Eigen::VectorXd& unary);

// Central finite differences of a scalar function.
Eigen::VectorXd finite_difference_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h = 1e-5);

}  // namespace smp::oracles

#endif  // SPARSEMP_TESTS_ORACLES_HPP_
