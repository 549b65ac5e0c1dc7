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

#ifndef SPARSEMP_OBJECTIVE_HPP_
#define SPARSEMP_OBJECTIVE_HPP_

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "sparsemp/affine_map.hpp"

namespace smp {

// One differentiable piece of the objective. eval returns the value and, when
// grad is non-null, accumulates the gradient into it.
struct SmoothTerm {
  std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)> eval;
  double lipschitz_grad = 0.0;
};

// One prox-capable piece phi(map.apply(x)). prox_inplace overwrites y with
// prox_{step * phi}(y).
struct ProxTerm {
  AffineMap map;
  std::function<double(const Eigen::VectorXd& y)> value;
  std::function<void(Eigen::VectorXd& y, double step)> prox_inplace;
  // Indicator terms (used by support-restricted polishing) contribute no
  // objective value; feasibility is tracked through the splitting residual.
  bool is_indicator = false;
};

// Structured description of a convex objective f: a sum of smooth terms plus
// prox-capable terms composed with affine maps. lipschitz_f is the Lipschitz
// constant of f itself (not of its gradient); the penalty thresholds of the
// MPEC solvers consume it.
struct ObjectiveSpec {
  std::vector<SmoothTerm> smooth;
  std::vector<ProxTerm> prox;
  double lipschitz_f = 0.0;

  double smooth_lipschitz_grad() const;
  // Value of all smooth terms; accumulates gradients into grad when non-null.
  double smooth_value(const Eigen::VectorXd& x, Eigen::VectorXd* grad) const;
  // Full objective value f(x).
  double value(const Eigen::VectorXd& x) const;
};

// ---------------------------------------------------------------------------
// Proximal / gradient oracles shared by the problem adapters.

// Elementwise sign(v) * max(|v| - t, 0).
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double t);
double soft_threshold(double v, double t);

// prox of z -> sum_i w_i |z_i| + (q_i / 2) z_i^2 + g_i z_i at r:
//   ST(r - step * g, step * w) / (1 + step * q)  (elementwise).
// Empty w/q/g are treated as zero.
void prox_weighted_l1_quad(Eigen::VectorXd& r, double step,
                           const Eigen::VectorXd& w, const Eigen::VectorXd& q,
                           const Eigen::VectorXd& g);
double weighted_l1_quad_value(const Eigen::VectorXd& z,
                              const Eigen::VectorXd& w,
                              const Eigen::VectorXd& q,
                              const Eigen::VectorXd& g);

// Hinge loss sum_i max(0, 1 - m_i) on a vector of margins (labels already
// folded in). The prox moves each margin toward the kink at 1, clipping the
// move at step.
double hinge_value(const Eigen::VectorXd& margins);
Eigen::VectorXd prox_hinge(const Eigen::VectorXd& margins, double step);

// Projection onto { v : ||v||_1 <= radius }.
Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& r, double radius);

// prox of step * ||.||_inf via Moreau decomposition:
//   r - project_l1_ball(r, step).
Eigen::VectorXd prox_linf(const Eigen::VectorXd& r, double step);

// Total-variation group shrinkage on stacked gradients (gx; gy). p = 1 is an
// elementwise soft-threshold; p = 2 shrinks each per-pixel pair (gx_i, gy_i)
// by max(0, 1 - step / ||pair||_2).
double tv_value(const Eigen::VectorXd& gxgy, int p);
Eigen::VectorXd prox_tv_groups(const Eigen::VectorXd& gxgy, double step, int p);

// Regularized logistic loss lambda/2 ||x||^2 + sum_i log(1+exp(r_i)) - r_i y_i
// with r = S x and labels y in {-1, +1}. Numerically stable in the exponent.
double logistic_value_grad(const Eigen::MatrixXd& features,
                           const Eigen::VectorXd& labels, double lambda,
                           const Eigen::VectorXd& x, Eigen::VectorXd* grad);

// ---------------------------------------------------------------------------
// Term builders.

SmoothTerm make_logistic_term(Eigen::MatrixXd features, Eigen::VectorXd labels,
                              double lambda);

// 1/2 sum_i h_i (x_i - c_i)^2.
SmoothTerm make_diag_quadratic_term(Eigen::VectorXd curvature,
                                    Eigen::VectorXd center);

// 1/2 x^T Q x + q^T x + c0 for symmetric PSD Q.
SmoothTerm make_quadratic_term(Eigen::MatrixXd q_matrix, Eigen::VectorXd q_lin,
                               double constant);

// lambda/2 ||x||^2.
SmoothTerm make_ridge_term(double lambda, Eigen::Index n);

// Hinge term over margins map (rows y_i * s_i^T).
ProxTerm make_hinge_prox_term(const Eigen::MatrixXd& features,
                              const Eigen::VectorXd& labels);

// ||map(x)||_inf.
ProxTerm make_linf_prox_term(AffineMap map);

// TV over a grad2d map, p in {1, 2}.
ProxTerm make_tv_prox_term(AffineMap grad_map, int p);

}  // namespace smp

#endif  // SPARSEMP_OBJECTIVE_HPP_
