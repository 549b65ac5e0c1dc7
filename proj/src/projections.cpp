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

#include "sparsemp/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace smp {

namespace {

// x(theta) with x_i = clip((-a_i - theta)/d_i, 0, 1).
Eigen::VectorXd fill_at(const DiagonalQP& qp, double theta) {
  const Eigen::Index n = qp.d.size();
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x[i] = std::clamp((-qp.a[i] - theta) / qp.d[i], 0.0, 1.0);
  }
  return x;
}

}  // namespace

Eigen::VectorXd breakpoint_solve(const DiagonalQP& qp, double* theta_out) {
  const Eigen::Index n = qp.d.size();
  if (n == 0) throw_error(ErrorCode::kInvalidArgument, "breakpoint_solve: empty problem");
  if (qp.a.size() != n) {
    throw_error(ErrorCode::kDimensionMismatch, "breakpoint_solve: d and a differ in length");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(qp.d[i] > 0.0)) {
      throw_error(ErrorCode::kInvalidArgument,
                  "breakpoint_solve: diagonal entries must be positive");
    }
  }
  const double s = qp.s;
  if (qp.cmp == Cmp::kEq && (s < 0.0 || s > double(n))) {
    throw_error(ErrorCode::kInfeasible,
                "breakpoint_solve: equality budget outside [0, n]");
  }
  if (qp.cmp == Cmp::kLe && s < 0.0) {
    throw_error(ErrorCode::kInfeasible, "breakpoint_solve: <= budget below 0");
  }
  if (qp.cmp == Cmp::kGe && s > double(n)) {
    throw_error(ErrorCode::kInfeasible, "breakpoint_solve: >= budget above n");
  }

  // Unconstrained-in-budget candidate (theta = 0).
  if (qp.cmp != Cmp::kEq) {
    Eigen::VectorXd x0 = fill_at(qp, 0.0);
    const double sum0 = x0.sum();
    if ((qp.cmp == Cmp::kLe && sum0 <= s) || (qp.cmp == Cmp::kGe && sum0 >= s)) {
      if (theta_out) *theta_out = 0.0;
      return x0;
    }
  }

  // g(theta) = sum_i x_i(theta) decreases monotonically from n to 0 and is
  // affine between breakpoints. Bracket the crossing by bisecting at (rough)
  // medians of the breakpoints still inside the bracket; coordinates whose
  // bound status is settled by the bracket drop out, so the work per level
  // shrinks and the passes stay sequential.
  struct Coord {
    double exit;   // theta above which x_i = 0   (= -a_i)
    double enter;  // theta below which x_i = 1   (= -a_i - d_i)
    double inv_d;
  };
  static thread_local std::vector<Coord> active;
  static thread_local std::vector<double> scratch;
  static thread_local std::vector<double> inv_all;
  active.resize(static_cast<size_t>(n));
  inv_all.resize(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double inv = 1.0 / qp.d[i];
    inv_all[size_t(i)] = inv;
    active[size_t(i)] = {-qp.a[i], -qp.a[i] - qp.d[i], inv};
  }
  const double inf = std::numeric_limits<double>::infinity();
  double lo = -inf, hi = inf;  // invariant: g(lo) >= s >= g(hi)
  double fixed_ones = 0.0;
  for (;;) {
    scratch.clear();
    for (const Coord& c : active) {
      if (c.enter > lo && c.enter < hi) scratch.push_back(c.enter);
      if (c.exit > lo && c.exit < hi) scratch.push_back(c.exit);
    }
    if (scratch.empty()) break;
    double pivot;
    if (scratch.size() <= 2048) {
      // Cache-resident: the exact median is cheap and halves reliably.
      auto mid = scratch.begin() + std::ptrdiff_t(scratch.size() / 2);
      std::nth_element(scratch.begin(), mid, scratch.end());
      pivot = *mid;
    } else {
      // Median of nine evenly spaced samples.
      double sample[9];
      const size_t stride = scratch.size() / 9;
      for (int j = 0; j < 9; ++j) sample[j] = scratch[size_t(j) * stride];
      std::nth_element(sample, sample + 4, sample + 9);
      pivot = sample[4];
    }
    double g = fixed_ones;
    for (const Coord& c : active) {
      g += std::clamp((c.exit - pivot) * c.inv_d, 0.0, 1.0);
    }
    if (g >= s) {
      lo = pivot;
    } else {
      hi = pivot;
    }
    // Coordinates pinned over the whole bracket leave the active set.
    size_t keep = 0;
    for (const Coord& c : active) {
      if (c.exit <= lo) continue;  // at zero throughout
      if (c.enter >= hi) {
        fixed_ones += 1.0;  // at one throughout
        continue;
      }
      active[keep++] = c;
    }
    active.resize(keep);
  }

  // No breakpoint inside the bracket: g is affine there with the remaining
  // coordinates free.
  double slope = 0.0, sum = 0.0;
  for (const Coord& c : active) {
    slope += c.inv_d;
    sum += c.exit * c.inv_d;
  }
  double theta;
  if (slope > 0.0) {
    theta = (fixed_ones + sum - s) / slope;
    if (!std::isinf(lo)) theta = std::max(theta, lo);
    if (!std::isinf(hi)) theta = std::min(theta, hi);
  } else {
    theta = std::isinf(lo) ? (std::isinf(hi) ? 0.0 : hi - 1.0)
                           : (std::isinf(hi) ? lo + 1.0 : 0.5 * (lo + hi));
    if (std::isinf(lo) && std::isinf(hi)) theta = 0.0;
  }
  if (theta_out) *theta_out = theta;
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x[i] = std::clamp((-qp.a[i] - theta) * inv_all[size_t(i)], 0.0, 1.0);
  }
  return x;
}

Eigen::VectorXd capped_simplex_project(const Eigen::VectorXd& z, double k) {
  if (k < 0.0) throw_error(ErrorCode::kInvalidArgument, "capped_simplex_project: k < 0");
  DiagonalQP qp;
  qp.d = Eigen::VectorXd::Ones(z.size());
  qp.a = -z.cwiseAbs();
  qp.s = k;
  qp.cmp = Cmp::kLe;
  Eigen::VectorXd bar = breakpoint_solve(qp);
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (z[i] < 0.0) bar[i] = -bar[i];
  }
  return bar;
}

Eigen::VectorXd hard_threshold(const Eigen::VectorXd& x, Eigen::Index k) {
  const Eigen::Index n = x.size();
  if (k < 0) throw_error(ErrorCode::kInvalidArgument, "hard_threshold: k < 0");
  if (k >= n) return x;
  std::vector<Eigen::Index> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index(0));
  std::sort(idx.begin(), idx.end(), [&x](Eigen::Index i, Eigen::Index j) {
    const double ai = std::abs(x[i]), aj = std::abs(x[j]);
    if (ai != aj) return ai > aj;
    return i < j;
  });
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (Eigen::Index r = 0; r < k; ++r) out[idx[size_t(r)]] = x[idx[size_t(r)]];
  return out;
}

Eigen::VectorXd v_subproblem_solve(const Eigen::VectorXd& abs_ax,
                                   const Eigen::VectorXd& pi,
                                   const Eigen::VectorXd& v_prev, double alpha,
                                   double mu, double k) {
  const Eigen::Index m = abs_ax.size();
  if (pi.size() != m || v_prev.size() != m) {
    throw_error(ErrorCode::kDimensionMismatch, "v_subproblem_solve: length mismatch");
  }
  if (k < 0.0 || k > double(m)) {
    throw_error(ErrorCode::kInvalidArgument,
                "v_subproblem_solve: budget k outside [0, m]");
  }
  if (!(alpha > 0.0) || !(mu > 0.0)) {
    throw_error(ErrorCode::kInvalidArgument, "v_subproblem_solve: need alpha, mu > 0");
  }
  DiagonalQP qp;
  qp.d = alpha * abs_ax.array().square().matrix() + Eigen::VectorXd::Constant(m, mu);
  qp.a = pi.cwiseProduct(abs_ax) - mu * v_prev;
  qp.s = double(m) - k;
  qp.cmp = Cmp::kGe;
  return breakpoint_solve(qp);
}

}  // namespace smp
