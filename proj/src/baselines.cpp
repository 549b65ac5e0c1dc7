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

#include "sparsemp/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>

#include <Eigen/SVD>

#include "sparsemp/projections.hpp"

namespace smp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Eigen::Index integer_k(double k) {
  return Eigen::Index(std::floor(k + 1e-9));
}

double rel_change(const Eigen::VectorXd& next, const Eigen::VectorXd& prev) {
  return (next - prev).norm() / (1.0 + prev.norm());
}

}  // namespace

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int e = -10; e <= 10; e += 2) grid.push_back(std::ldexp(1.0, e));
  return grid;
}

std::vector<bool> top_k_support(const Eigen::VectorXd& z, Eigen::Index k) {
  std::vector<bool> support(size_t(z.size()), false);
  std::vector<Eigen::Index> idx(static_cast<size_t>(z.size()));
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = Eigen::Index(i);
  std::sort(idx.begin(), idx.end(), [&z](Eigen::Index a, Eigen::Index b) {
    const double aa = std::abs(z[a]), ab = std::abs(z[b]);
    if (aa != ab) return aa > ab;
    return a < b;
  });
  for (Eigen::Index r = 0; r < std::min<Eigen::Index>(k, z.size()); ++r) {
    support[size_t(idx[size_t(r)])] = true;
  }
  return support;
}

namespace {

// Identity maps: the hard constraint pins coordinates; minimise over the
// free ones with the pinned values handled by a projection prox.
Eigen::VectorXd polish_identity(const SparsityProblem& problem,
                                const std::vector<bool>& support,
                                const Eigen::VectorXd& x_init,
                                const BaselineConfig& config) {
  const AffineMap& map = problem.constraint_map;
  auto mask = std::make_shared<const std::vector<bool>>(support);
  auto pinned = std::make_shared<const Eigen::VectorXd>(-map.offset());

  ObjectiveSpec augmented = problem.objective;
  ProxTerm constraint;
  constraint.map = AffineMap::identity(map.cols());
  constraint.is_indicator = true;
  constraint.value = [](const Eigen::VectorXd&) { return 0.0; };
  constraint.prox_inplace = [mask, pinned](Eigen::VectorXd& y, double) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (!(*mask)[size_t(i)]) y[i] = (*pinned)[i];
    }
  };
  augmented.prox.push_back(std::move(constraint));

  WeightedL1Subproblem sub;
  sub.objective = &augmented;
  sub.mu = 1e-8;
  sub.x0 = x_init;
  sub.x_init = x_init;
  sub.tol = std::min(config.inner_tol, 1e-10);
  sub.max_iter = std::max(config.inner_max_iter, 5000);
  sub.track_best = false;
  Eigen::VectorXd x = solve_weighted_l1(sub).x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!support[size_t(i)]) x[i] = (*pinned)[i];
  }
  return x;
}

// General maps: reparametrise the affine set {(Ax+b)_i = 0, i off-support}
// as x = x_p + N xi with an orthonormal kernel basis N, and minimise the
// composed objective over xi. Exact up to roundoff.
Eigen::VectorXd polish_null_space(const SparsityProblem& problem,
                                  const std::vector<bool>& support,
                                  const Eigen::VectorXd& x_init,
                                  const BaselineConfig& config) {
  const AffineMap& map = problem.constraint_map;
  const Eigen::Index n = map.cols();
  Eigen::MatrixXd dense = map.to_dense();
  Eigen::VectorXd offset = map.offset();
  Eigen::Index rows_off = 0;
  for (bool in_support : support) rows_off += in_support ? 0 : 1;
  if (rows_off == 0) return x_init;
  Eigen::MatrixXd a_off(rows_off, n);
  Eigen::VectorXd b_off(rows_off);
  Eigen::Index at = 0;
  for (Eigen::Index i = 0; i < map.rows(); ++i) {
    if (support[size_t(i)]) continue;
    a_off.row(at) = dense.row(i);
    b_off[at] = offset[i];
    ++at;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      a_off, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const double smax = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
  const double rank_tol = 1e-12 * std::max(1.0, smax);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > rank_tol) ++rank;
  }
  // Minimum-norm particular solution of A_off x = -b_off.
  Eigen::VectorXd x_p = Eigen::VectorXd::Zero(n);
  {
    Eigen::VectorXd utb = svd.matrixU().transpose() * (-b_off);
    for (Eigen::Index i = 0; i < rank; ++i) {
      x_p += svd.matrixV().col(i) * (utb[i] / svd.singularValues()[i]);
    }
  }
  if ((a_off * x_p + b_off).lpNorm<Eigen::Infinity>() >
      1e-8 * (1.0 + b_off.lpNorm<Eigen::Infinity>())) {
    return x_init;  // pinned system inconsistent; leave the iterate alone
  }
  if (rank == n) return x_p;  // unique feasible point
  Eigen::MatrixXd basis = svd.matrixV().rightCols(n - rank);

  auto basis_ptr = std::make_shared<const Eigen::MatrixXd>(std::move(basis));
  auto xp_ptr = std::make_shared<const Eigen::VectorXd>(std::move(x_p));
  ObjectiveSpec reduced;
  reduced.lipschitz_f = problem.objective.lipschitz_f;
  for (const SmoothTerm& term : problem.objective.smooth) {
    SmoothTerm wrapped;
    wrapped.lipschitz_grad = term.lipschitz_grad;  // orthonormal basis
    auto inner_eval = term.eval;
    wrapped.eval = [inner_eval, basis_ptr, xp_ptr](const Eigen::VectorXd& xi,
                                                   Eigen::VectorXd* grad) {
      Eigen::VectorXd x = *xp_ptr + *basis_ptr * xi;
      if (!grad) return inner_eval(x, nullptr);
      Eigen::VectorXd gx = Eigen::VectorXd::Zero(x.size());
      const double val = inner_eval(x, &gx);
      *grad += basis_ptr->transpose() * gx;
      return val;
    };
    reduced.smooth.push_back(std::move(wrapped));
  }
  for (const ProxTerm& term : problem.objective.prox) {
    ProxTerm wrapped;
    wrapped.value = term.value;
    wrapped.prox_inplace = term.prox_inplace;
    wrapped.is_indicator = term.is_indicator;
    Eigen::MatrixXd composed = term.map.to_dense() * (*basis_ptr);
    Eigen::VectorXd composed_offset =
        term.map.apply(*xp_ptr);  // B x_p + c
    wrapped.map = AffineMap::dense(std::move(composed)).with_offset(composed_offset);
    reduced.prox.push_back(std::move(wrapped));
  }

  WeightedL1Subproblem sub;
  sub.objective = &reduced;
  sub.mu = 1e-8;
  sub.x0 = basis_ptr->transpose() * (x_init - *xp_ptr);
  sub.tol = std::min(config.inner_tol, 1e-10);
  sub.max_iter = std::max(config.inner_max_iter, 5000);
  sub.track_best = false;
  Eigen::VectorXd xi = solve_weighted_l1(sub).x;
  return *xp_ptr + *basis_ptr * xi;
}

}  // namespace

Eigen::VectorXd polish_on_support(const SparsityProblem& problem,
                                  const std::vector<bool>& support,
                                  const Eigen::VectorXd& x_init,
                                  const BaselineConfig& config) {
  const AffineMap& map = problem.constraint_map;
  if (Eigen::Index(support.size()) != map.rows()) {
    throw_error(ErrorCode::kDimensionMismatch, "polish_on_support: bad mask size");
  }
  if (map.is_identity()) {
    return polish_identity(problem, support, x_init, config);
  }
  return polish_null_space(problem, support, x_init, config);
}

namespace {

void fill_result(SolveResult& res, const SparsityProblem& problem,
                 const Eigen::VectorXd& x, double l0_threshold) {
  res.x = x;
  res.objective = problem.objective.value(x);
  res.l0_achieved = count_l0(problem.constraint_map.apply(x), l0_threshold);
}

}  // namespace

SolveResult greedy_solve(const SparsityProblem& problem,
                         const BaselineConfig& config) {
  problem.validate();
  if (!problem.constraint_map.is_identity() || problem.constraint_map.has_offset()) {
    throw_error(ErrorCode::kInvalidArgument,
                "greedy_solve: requires an identity constraint map");
  }
  if (!problem.objective.prox.empty()) {
    throw_error(ErrorCode::kInvalidArgument,
                "greedy_solve: objective must be smooth");
  }
  const double lip = problem.objective.smooth_lipschitz_grad();
  if (!(lip > 0.0)) {
    throw_error(ErrorCode::kInvalidArgument,
                "greedy_solve: need a positive gradient Lipschitz constant");
  }
  const Eigen::Index n = problem.constraint_map.cols();
  const Eigen::Index k = integer_k(problem.k);

  SolveResult res;
  res.method = "greedy";
  const auto start = Clock::now();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad(n);
  double f_prev = std::numeric_limits<double>::infinity();
  std::vector<bool> support_prev(size_t(n), false);
  bool converged = false;
  int t = 0;
  for (; t < config.max_outer; ++t) {
    grad.setZero();
    const double f_val = problem.objective.smooth_value(x, &grad);
    Eigen::VectorXd x_next = hard_threshold(x - grad / lip, k);
    std::vector<bool> support(size_t(n), false);
    for (Eigen::Index i = 0; i < n; ++i) support[size_t(i)] = x_next[i] != 0.0;

    res.trace.push_back({t, f_val, 0.0, lip, elapsed_ms(start)});
    const bool same_support = support == support_prev;
    const double dx = rel_change(x_next, x);
    x = x_next;
    support_prev = std::move(support);
    if (t >= 1 && same_support && dx <= config.eps_x &&
        std::abs(f_prev - f_val) <= config.eps_gap * (1.0 + std::abs(f_val))) {
      converged = true;
      ++t;
      break;
    }
    f_prev = f_val;
  }
  fill_result(res, problem, x, config.l0_threshold);
  res.complementarity_gap = 0.0;
  res.outer_iterations = t;
  res.converged = converged;
  return res;
}

namespace {

// Shared engine for QPM and (mean-)doubly ADM: the two differ only in the
// dual update (QPM keeps dual = 0) and in what is reported.
SolveResult penalty_splitting_solve(const SparsityProblem& problem,
                                    const BaselineConfig& config, bool use_dual,
                                    bool report_mean, const char* name) {
  problem.validate();
  const AffineMap& map = problem.constraint_map;
  const Eigen::Index n = map.cols();
  const Eigen::Index m = map.rows();
  const Eigen::Index k = integer_k(problem.k);

  SolveResult res;
  res.method = name;
  const auto start = Clock::now();

  double beta = 1.0;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd y = hard_threshold(map.apply(x), k);
  Eigen::VectorXd dual = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd x_sum = Eigen::VectorXd::Zero(n);
  InnerState ws;

  bool converged = false;
  double residual = std::numeric_limits<double>::infinity();
  int t = 0;
  for (; t < config.max_outer; ++t) {
    WeightedL1Subproblem sub;
    sub.objective = &problem.objective;
    sub.map = &map;
    sub.q = Eigen::VectorXd::Constant(m, beta);
    sub.g = dual - beta * y;
    sub.mu = config.mu;
    sub.x0 = x;
    sub.x_init = x;
    sub.tol = config.inner_tol;
    sub.max_iter = config.inner_max_iter;
    InnerSolveResult inner = solve_weighted_l1(sub, &ws);

    Eigen::VectorXd z = map.apply(inner.x);
    y = hard_threshold(use_dual ? (z + dual / beta).eval() : z, k);
    Eigen::VectorXd r = z - y;
    if (use_dual) dual += beta * r;
    residual = r.lpNorm<Eigen::Infinity>();

    const double dx = rel_change(inner.x, x);
    x = inner.x;
    x_sum += x;
    res.trace.push_back(
        {t, problem.objective.value(x), residual, beta, elapsed_ms(start)});
    if (t >= 1 && residual <= config.eps_gap && dx <= config.eps_x) {
      converged = true;
      ++t;
      break;
    }
    if ((t + 1) % config.cadence == 0) {
      const double beta_next = beta * config.penalty_growth;
      ws.scale_dual(0, beta_next / beta);
      beta = beta_next;
    }
  }

  Eigen::VectorXd x_out = x;
  if (report_mean && t > 0) x_out = x_sum / double(t);
  if (config.polish || report_mean) {
    std::vector<bool> support = top_k_support(map.apply(x_out), k);
    x_out = polish_on_support(problem, support, x_out, config);
  }
  fill_result(res, problem, x_out, config.l0_threshold);
  res.complementarity_gap = residual;
  res.outer_iterations = t;
  res.converged = converged;
  return res;
}

}  // namespace

SolveResult qpm_solve(const SparsityProblem& problem, const BaselineConfig& config) {
  return penalty_splitting_solve(problem, config, /*use_dual=*/false,
                                 /*report_mean=*/false, "qpm");
}

SolveResult di_adm_solve(const SparsityProblem& problem,
                         const BaselineConfig& config) {
  return penalty_splitting_solve(problem, config, /*use_dual=*/true,
                                 /*report_mean=*/false, "di_adm");
}

SolveResult md_adm_solve(const SparsityProblem& problem,
                         const BaselineConfig& config) {
  return penalty_splitting_solve(problem, config, /*use_dual=*/true,
                                 /*report_mean=*/true, "md_adm");
}

SolveResult cvx_sweep_solve(const SparsityProblem& problem,
                            const BaselineConfig& config) {
  problem.validate();
  const AffineMap& map = problem.constraint_map;
  const Eigen::Index m = map.rows();
  const Eigen::Index k = integer_k(problem.k);
  const std::vector<double> grid =
      config.lambda_grid.empty() ? default_lambda_grid() : config.lambda_grid;

  SolveResult res;
  res.method = "cvx_sweep";
  const auto start = Clock::now();

  Eigen::VectorXd x = Eigen::VectorXd::Zero(map.cols());
  Eigen::VectorXd best_x;
  double best_obj = std::numeric_limits<double>::infinity();
  int grid_index = 0;
  for (double lambda : grid) {
    InnerState ws;
    // Proximal continuation: re-anchor until the l1-regularised solution
    // settles.
    for (int round = 0; round < 50; ++round) {
      WeightedL1Subproblem sub;
      sub.objective = &problem.objective;
      sub.map = &map;
      sub.w = Eigen::VectorXd::Constant(m, lambda);
      sub.mu = config.mu;
      sub.x0 = x;
      sub.x_init = x;
      sub.tol = config.inner_tol;
      sub.max_iter = config.inner_max_iter;
      Eigen::VectorXd x_next = solve_weighted_l1(sub, &ws).x;
      const double move = rel_change(x_next, x);
      x = std::move(x_next);
      if (move <= config.eps_x) break;
    }
    std::vector<bool> support = top_k_support(map.apply(x), k);
    Eigen::VectorXd candidate =
        config.polish ? polish_on_support(problem, support, x, config)
                      : [&] {
                          // Plain thresholding of the constraint image.
                          Eigen::VectorXd xc = x;
                          if (map.is_identity()) {
                            Eigen::VectorXd b = map.offset();
                            for (Eigen::Index i = 0; i < xc.size(); ++i) {
                              if (!support[size_t(i)]) xc[i] = -b[i];
                            }
                          }
                          return xc;
                        }();
    const double obj = problem.objective.value(candidate);
    res.trace.push_back({grid_index, obj, 0.0, lambda, elapsed_ms(start)});
    if (obj < best_obj) {
      best_obj = obj;
      best_x = candidate;
    }
    ++grid_index;
  }

  fill_result(res, problem, best_x, config.l0_threshold);
  res.complementarity_gap = 0.0;
  res.outer_iterations = grid_index;
  res.converged = true;
  return res;
}

}  // namespace smp
