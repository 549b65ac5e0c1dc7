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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace smp::oracles {

namespace {

double qp_objective(const DiagonalQP& qp, const Eigen::VectorXd& x) {
  return 0.5 * x.cwiseProduct(x).dot(qp.d) + qp.a.dot(x);
}

bool budget_feasible(const DiagonalQP& qp, double sum, double tol) {
  switch (qp.cmp) {
    case Cmp::kLe: return sum <= qp.s + tol;
    case Cmp::kGe: return sum >= qp.s - tol;
    case Cmp::kEq: return std::abs(sum - qp.s) <= tol;
  }
  return false;
}

}  // namespace

Eigen::VectorXd active_set_qp_solve(const DiagonalQP& qp) {
  const Eigen::Index n = qp.d.size();
  const double tol = 1e-9;
  double best_obj = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best;

  std::vector<int> pattern(size_t(n), 0);  // 0: at zero, 1: at one, 2: free
  long total = 1;
  for (Eigen::Index i = 0; i < n; ++i) total *= 3;

  for (long code = 0; code < total; ++code) {
    long c = code;
    for (Eigen::Index i = 0; i < n; ++i) {
      pattern[size_t(i)] = int(c % 3);
      c /= 3;
    }
    for (int budget_active = 0; budget_active <= 1; ++budget_active) {
      Eigen::VectorXd x(n);
      bool ok = true;
      if (!budget_active) {
        // theta = 0: free coordinates sit at their unconstrained minimum.
        double sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          switch (pattern[size_t(i)]) {
            case 0: x[i] = 0.0; break;
            case 1: x[i] = 1.0; break;
            default: x[i] = -qp.a[i] / qp.d[i]; break;
          }
          if (x[i] < -tol || x[i] > 1.0 + tol) ok = false;
          sum += x[i];
        }
        ok = ok && budget_feasible(qp, sum, tol);
      } else {
        // Solve for the multiplier so the budget holds with equality.
        double fixed = 0.0, inv_sum = 0.0, target_sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (pattern[size_t(i)] == 1) fixed += 1.0;
          if (pattern[size_t(i)] == 2) {
            inv_sum += 1.0 / qp.d[i];
            target_sum += -qp.a[i] / qp.d[i];
          }
        }
        if (inv_sum == 0.0) {
          // No free coordinate: the pattern must hit the budget on its own.
          if (std::abs(fixed - qp.s) > tol) {
            ok = false;
          } else {
            for (Eigen::Index i = 0; i < n; ++i) {
              x[i] = pattern[size_t(i)] == 1 ? 1.0 : 0.0;
            }
          }
        } else {
          const double theta = (fixed + target_sum - qp.s) / inv_sum;
          for (Eigen::Index i = 0; i < n; ++i) {
            switch (pattern[size_t(i)]) {
              case 0: x[i] = 0.0; break;
              case 1: x[i] = 1.0; break;
              default:
                x[i] = (-qp.a[i] - theta) / qp.d[i];
                if (x[i] < -tol || x[i] > 1.0 + tol) ok = false;
                break;
            }
          }
          // Multiplier sign must match the constraint side.
          if (qp.cmp == Cmp::kLe && theta < -tol) ok = false;
          if (qp.cmp == Cmp::kGe && theta > tol) ok = false;
        }
      }
      if (!ok) continue;
      for (Eigen::Index i = 0; i < n; ++i) x[i] = std::clamp(x[i], 0.0, 1.0);
      if (!budget_feasible(qp, x.sum(), 10 * tol)) continue;
      const double obj = qp_objective(qp, x);
      if (obj < best_obj) {
        best_obj = obj;
        best = x;
      }
    }
  }
  return best;
}

SupportEnumeration best_k_sparse_diag_quadratic(const Eigen::VectorXd& h,
                                                const Eigen::VectorXd& c,
                                                Eigen::Index k) {
  const Eigen::Index n = h.size();
  SupportEnumeration best;
  best.objective = std::numeric_limits<double>::infinity();
  std::vector<bool> mask(size_t(n), false);
  std::fill(mask.begin(), mask.begin() + std::min(k, n), true);
  std::sort(mask.begin(), mask.end());
  // Iterate all C(n, k) masks via permutation enumeration.
  do {
    double obj = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!mask[size_t(i)]) obj += 0.5 * h[i] * c[i] * c[i];
    }
    if (obj < best.objective) {
      best.objective = obj;
      best.x = Eigen::VectorXd::Zero(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (mask[size_t(i)]) best.x[i] = c[i];
      }
    }
  } while (std::next_permutation(mask.begin(), mask.end()));
  return best;
}

MrfBruteForce mrf_brute_force(const Eigen::MatrixXd& laplacian,
                              const Eigen::VectorXd& unary) {
  const Eigen::Index n = unary.size();
  MrfBruteForce best;
  best.objective = std::numeric_limits<double>::infinity();
  const long total = 1L << n;
  Eigen::VectorXd x(n);
  for (long code = 0; code < total; ++code) {
    for (Eigen::Index i = 0; i < n; ++i) x[i] = (code >> i) & 1 ? 1.0 : 0.0;
    const double obj = 0.5 * x.dot(laplacian * x) + unary.dot(x);
    if (obj < best.objective) {
      best.objective = obj;
      best.labels = x;
    }
  }
  return best;
}

Eigen::VectorXd finite_difference_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd grad(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace smp::oracles
