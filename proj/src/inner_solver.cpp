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

#include "sparsemp/inner_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smp {

namespace {

struct Block {
  const AffineMap* map = nullptr;
  // phi value at y; prox_{step * phi} in place.
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<void(Eigen::VectorXd&, double)> prox;
  bool is_indicator = false;
};

}  // namespace

InnerSolveResult solve_weighted_l1(const WeightedL1Subproblem& sub,
                                   InnerState* state) {
  if (sub.objective == nullptr) {
    throw_error(ErrorCode::kInvalidArgument, "solve_weighted_l1: missing objective");
  }
  const Eigen::Index n = sub.x0.size();
  if (n == 0) throw_error(ErrorCode::kInvalidArgument, "solve_weighted_l1: empty x0");
  if (sub.mu < 0.0) throw_error(ErrorCode::kInvalidArgument, "solve_weighted_l1: mu < 0");

  const bool has_z = sub.map != nullptr &&
                     (sub.w.size() > 0 || sub.q.size() > 0 || sub.g.size() > 0);
  if (has_z) {
    const Eigen::Index m = sub.map->rows();
    auto check = [m](const Eigen::VectorXd& v, const char* name) {
      if (v.size() != 0 && v.size() != m) {
        throw_error(ErrorCode::kDimensionMismatch,
                    std::string("solve_weighted_l1: ") + name + " has wrong length");
      }
    };
    check(sub.w, "w");
    check(sub.q, "q");
    check(sub.g, "g");
    if (sub.w.size() > 0 && sub.w.minCoeff() < 0.0) {
      throw_error(ErrorCode::kInvalidArgument, "solve_weighted_l1: w must be >= 0");
    }
    if (sub.q.size() > 0 && sub.q.minCoeff() < 0.0) {
      throw_error(ErrorCode::kInvalidArgument, "solve_weighted_l1: q must be >= 0");
    }
  }

  // Splitting blocks: the weighted-l1/quadratic z-term first, then the
  // objective's own prox terms.
  std::vector<Block> blocks;
  if (has_z) {
    Block b;
    b.map = sub.map;
    b.value = [&sub](const Eigen::VectorXd& z) {
      return weighted_l1_quad_value(z, sub.w, sub.q, sub.g);
    };
    b.prox = [&sub](Eigen::VectorXd& z, double step) {
      prox_weighted_l1_quad(z, step, sub.w, sub.q, sub.g);
    };
    blocks.push_back(std::move(b));
  }
  for (const ProxTerm& t : sub.objective->prox) {
    Block b;
    b.map = &t.map;
    b.value = t.value;
    b.prox = t.prox_inplace;
    b.is_indicator = t.is_indicator;
    blocks.push_back(std::move(b));
  }
  const size_t nb = blocks.size();

  Eigen::VectorXd x = sub.x_init.size() == n ? sub.x_init : sub.x0;

  // lambda_max(sum_l B_l^T B_l): step-size bound for the linearized update.
  double bnorm2 = 0.0;
  if (nb > 0) {
    if (state && state->bnorm2 >= 0.0) {
      bnorm2 = state->bnorm2;
    } else {
      bnorm2 = power_iteration_sym_norm(
          [&blocks](const Eigen::VectorXd& v) {
            Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
            for (const Block& b : blocks) {
              out += b.map->adjoint(b.map->apply_linear(v));
            }
            return out;
          },
          n);
      if (state) state->bnorm2 = bnorm2;
    }
  }

  const double smooth_lip = sub.objective->smooth_lipschitz_grad() + sub.mu;

  double beta = 1.0;
  std::vector<Eigen::VectorXd> y(nb), lambda(nb);
  bool warm = false;
  if (state && state->y.size() == nb && state->lambda.size() == nb &&
      state->beta > 0.0) {
    warm = true;
    for (size_t l = 0; l < nb; ++l) {
      if (state->y[l].size() != blocks[l].map->rows() ||
          state->lambda[l].size() != blocks[l].map->rows()) {
        warm = false;
        break;
      }
    }
  }
  if (warm) {
    y = state->y;
    lambda = state->lambda;
    beta = state->beta;
  } else {
    for (size_t l = 0; l < nb; ++l) {
      y[l] = blocks[l].map->apply(x);
      lambda[l] = Eigen::VectorXd::Zero(blocks[l].map->rows());
    }
  }

  auto step_size = [&](double b) {
    return 1.0 / (smooth_lip + 1.01 * b * std::max(bnorm2, 1e-12) + 1e-12);
  };

  InnerSolveResult res;
  res.x = x;
  double f_init = std::numeric_limits<double>::quiet_NaN();
  double f_best = std::numeric_limits<double>::infinity();
  double f_prev_best = f_best;
  int flat_iters = 0;
  int blowup_iters = 0;
  double blowup_reference = 0.0;
  double kkt = std::numeric_limits<double>::infinity();
  const int balance_every = 20;
  const int balance_freeze = std::max(50, sub.max_iter / 2);

  Eigen::VectorXd grad(n);
  std::vector<Eigen::VectorXd> bx(nb);

  int it = 0;
  for (; it < sub.max_iter; ++it) {
    // Value + gradient of the smooth part, composite values at the true x.
    grad.setZero();
    double f_val = sub.objective->smooth_value(x, &grad);
    if (sub.mu > 0.0) {
      f_val += 0.5 * sub.mu * (x - sub.x0).squaredNorm();
      grad += sub.mu * (x - sub.x0);
    }
    double lambda_hat_inf = 0.0;
    double smooth_grad_inf = grad.lpNorm<Eigen::Infinity>();
    for (size_t l = 0; l < nb; ++l) {
      bx[l] = blocks[l].map->apply(x);
      if (!blocks[l].is_indicator) f_val += blocks[l].value(bx[l]);
      Eigen::VectorXd lam_hat = lambda[l] + beta * (bx[l] - y[l]);
      lambda_hat_inf = std::max(lambda_hat_inf, lam_hat.lpNorm<Eigen::Infinity>());
      grad += blocks[l].map->adjoint(lam_hat);
    }

    if (!std::isfinite(f_val)) {
      throw_error(ErrorCode::kDiverged, "solve_weighted_l1: objective not finite");
    }
    if (it == 0) f_init = f_val;
    // Penalty-heavy solves can sit far above the warm-start value while the
    // duals settle; divergence means the excess keeps growing, not that it
    // exists.
    if (f_val - f_init > 1e3 * (1.0 + std::abs(f_init))) {
      if (blowup_iters == 0) blowup_reference = f_val;
      if (++blowup_iters >= 50) {
        if (f_val > 10.0 * std::abs(blowup_reference) + 1.0) {
          throw_error(ErrorCode::kDiverged,
                      "solve_weighted_l1: objective blew up; check step sizes "
                      "and term scaling");
        }
        blowup_iters = 0;  // elevated but stable: keep iterating
      }
    } else {
      blowup_iters = 0;
    }
    f_prev_best = f_best;
    if (sub.track_best) {
      if (f_val < f_best) {
        f_best = f_val;
        res.x = x;
      }
    } else {
      f_best = f_val;
    }
    if (sub.record_objective_trace) res.objective_trace.push_back(f_best);

    const double stat_res = grad.lpNorm<Eigen::Infinity>();
    const double stat_rel = stat_res / (1.0 + smooth_grad_inf + lambda_hat_inf);

    // Relative objective progress over consecutive sweeps.
    const double rel_dec =
        std::isfinite(f_prev_best)
            ? (f_prev_best - f_best) / (1.0 + std::abs(f_best))
            : std::numeric_limits<double>::infinity();
    if (it > 0 && rel_dec < sub.tol) {
      ++flat_iters;
    } else {
      flat_iters = 0;
    }

    // Gradient step on the linearized augmented Lagrangian.
    const double tau = step_size(beta);
    x -= tau * grad;

    // Splitting-variable and multiplier updates, primal residual at new x.
    double prim_res = 0.0, prim_scale = 0.0, prim_norm2 = 0.0;
    for (size_t l = 0; l < nb; ++l) {
      Eigen::VectorXd t = blocks[l].map->apply(x);
      Eigen::VectorXd target = t + lambda[l] / beta;
      blocks[l].prox(target, 1.0 / beta);
      Eigen::VectorXd r = t - target;
      lambda[l] += beta * r;
      prim_res = std::max(prim_res, r.lpNorm<Eigen::Infinity>());
      prim_scale = std::max(prim_scale, target.lpNorm<Eigen::Infinity>());
      prim_norm2 += r.squaredNorm();
      if ((it + 1) % balance_every == 0 && it < balance_freeze) {
        // Dual residual for residual balancing only.
        Eigen::VectorXd dy = target - y[l];
        y[l] = std::move(target);
        bx[l] = blocks[l].map->adjoint(dy);  // reuse bx as scratch
      } else {
        y[l] = std::move(target);
      }
    }

    const double prim_rel = prim_res / (1.0 + prim_scale);
    kkt = std::max(prim_rel, stat_rel);

    if (flat_iters >= 3 && kkt <= 10.0 * sub.tol) {
      ++it;
      break;
    }

    if ((it + 1) % balance_every == 0 && it < balance_freeze && nb > 0) {
      double dual_norm2 = 0.0;
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
      for (size_t l = 0; l < nb; ++l) acc += bx[l];
      dual_norm2 = beta * beta * acc.squaredNorm();
      const double rp = std::sqrt(prim_norm2);
      const double rd = std::sqrt(dual_norm2);
      if (rp > 10.0 * rd && rp > 1e-14) {
        beta *= 2.0;
      } else if (rd > 10.0 * rp && rd > 1e-14) {
        beta *= 0.5;
      }
      beta = std::clamp(beta, 1e-8, 1e12);
    }
  }

  res.converged = flat_iters >= 3 && kkt <= 10.0 * sub.tol;
  res.kkt_residual = kkt;
  res.iterations = it;
  res.objective = f_best;
  if (!sub.track_best) {
    res.x = x;
    res.objective = sub.objective->value(x) +
                    (has_z ? weighted_l1_quad_value(sub.map->apply(x), sub.w,
                                                    sub.q, sub.g)
                           : 0.0) +
                    (sub.mu > 0.0 ? 0.5 * sub.mu * (x - sub.x0).squaredNorm()
                                  : 0.0);
  }

  if (state) {
    state->y = std::move(y);
    state->lambda = std::move(lambda);
    state->beta = beta;
    state->bnorm2 = bnorm2;
  }
  return res;
}

}  // namespace smp
