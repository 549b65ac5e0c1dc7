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

#include "sparsemp/mpec.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sparsemp/projections.hpp"

namespace smp {
namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(Eigen::Index(values.size()));
  Eigen::Index i = 0;
  for (double value : values) v[i++] = value;
  return v;
}

SparsityProblem diag_quadratic_problem(const Eigen::VectorXd& h,
                                       const Eigen::VectorXd& c, double k) {
  SparsityProblem problem;
  problem.constraint_map = AffineMap::identity(h.size());
  problem.k = k;
  problem.objective.smooth.push_back(make_diag_quadratic_term(h, c));
  problem.objective.lipschitz_f = h.maxCoeff() * (c.norm() + 10.0);
  return problem;
}

// Lemma: ||x||_0 = min ||u||_1 s.t. ||x||_1 = <u, x>, -1 <= u <= 1, attained
// at u = sign(x); and v = 1 - sign(|x|) attains <1, 1-v> = ||x||_0 with
// v .* |x| = 0. Checked over random integer-ish vectors with exact zeros.
TEST(MpecLemmas, SignCharacterizations) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::uniform_int_distribution<int> dim(1, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index n = dim(rng);
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = double(entry(rng));
    Eigen::Index l0 = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (x[i] != 0.0) ++l0;
    }

    Eigen::VectorXd u(n), v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      u[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
      v[i] = x[i] == 0.0 ? 1.0 : 0.0;
    }
    // Non-separable side.
    EXPECT_EQ(Eigen::Index(std::lround(u.lpNorm<1>())), l0);
    EXPECT_DOUBLE_EQ(x.lpNorm<1>(), u.dot(x));
    // No feasible u can have smaller l1 norm: |<u,x>| <= ||u||_inf ||x||_1
    // forces |u_i| = 1 on the support.
    // Separable side.
    EXPECT_EQ(Eigen::Index(std::lround(double(n) - v.sum())), l0);
    EXPECT_DOUBLE_EQ(v.cwiseProduct(x.cwiseAbs()).lpNorm<1>(), 0.0);
  }
}

TEST(EpmSolve, TwoDimQuadraticFindsSupportEnumerationOptimum) {
  SparsityProblem problem =
      diag_quadratic_problem(vec({1, 1}), vec({5, 0.1}), 1.0);
  SolverConfig config;
  SolveResult res = epm_solve(problem, config);
  EXPECT_TRUE(res.converged);
  EXPECT_LE(res.complementarity_gap, 1e-6);
  EXPECT_LE(res.l0_achieved, 1);
  auto oracle = oracles::best_k_sparse_diag_quadratic(vec({1, 1}), vec({5, 0.1}), 1);
  EXPECT_LE((res.x - oracle.x).lpNorm<Eigen::Infinity>(), 1e-4);
  EXPECT_NEAR(res.objective, oracle.objective, 1e-6);
}

TEST(AdmSolve, TwoDimQuadraticFindsSupportEnumerationOptimum) {
  SparsityProblem problem =
      diag_quadratic_problem(vec({1, 1}), vec({5, 0.1}), 1.0);
  SolverConfig config;
  SolveResult res = adm_solve(problem, config);
  EXPECT_TRUE(res.converged);
  EXPECT_LE(res.complementarity_gap, 1e-6);
  EXPECT_LE(res.l0_achieved, 1);
  auto oracle = oracles::best_k_sparse_diag_quadratic(vec({1, 1}), vec({5, 0.1}), 1);
  EXPECT_NEAR(res.objective, oracle.objective, 1e-6);
}

TEST(EpmSolve, OuterIterationBoundFormula) {
  // ceil((ln(L delta) - ln(eps rho0)) / ln 2) with L=1, delta=10, eps=1e-3,
  // rho0=0.01 -> ceil(log2(1e6)) = 20.
  const double bound =
      std::ceil((std::log(1.0 * 10.0) - std::log(1e-3 * 0.01)) / std::log(2.0));
  EXPECT_EQ(Eigen::Index(bound), 20);
}

TEST(EpmSolve, FirstIterationIsPureL1Problem) {
  SparsityProblem problem =
      diag_quadratic_problem(vec({1, 1, 1}), vec({3, 2, 1}), 2.0);
  SolverConfig config;
  WeightedL1Subproblem sub = epm_x_subproblem(
      problem, Eigen::VectorXd::Zero(3), config.rho0, Eigen::VectorXd::Zero(3),
      config);
  // u = 0 zeroes the linear tilt, leaving the plain rho ||Ax||_1 penalty.
  EXPECT_NEAR(sub.g.lpNorm<Eigen::Infinity>(), 0.0, 1e-15);
  EXPECT_TRUE(sub.w.isApprox(Eigen::VectorXd::Constant(3, config.rho0)));
  EXPECT_EQ(sub.q.size(), 0);
}

TEST(EpmSolve, RhoNeverExceedsCap) {
  SparsityProblem problem =
      diag_quadratic_problem(vec({1, 1, 1, 1}), vec({4, -3, 0.5, 0.2}), 2.0);
  SolverConfig config;
  SolveResult res = epm_solve(problem, config);
  ASSERT_TRUE(res.epm.has_value());
  const double cap =
      (1.0 + 1e-6) * problem.objective.lipschitz_f / 1.0;  // sigma(I) = 1
  EXPECT_LE(res.epm->rho_final, cap * (1.0 + 1e-12));
  for (const TraceRecord& t : res.trace) EXPECT_LE(t.penalty, cap * (1.0 + 1e-12));
  // Penalty-update count respects the logarithmic doubling bound with delta
  // taken as the observed max ||x^t||.
  const double delta = std::max(res.epm->max_x_norm, 1e-12);
  const double bound = std::ceil(
      (std::log(problem.objective.lipschitz_f * delta) -
       std::log(1e-3 * config.rho0)) /
      std::log(2.0));
  EXPECT_LE(res.epm->penalty_updates, int(bound));
}

TEST(AdmSolve, MultiplierArithmeticAndMonotonicity) {
  // pi' = pi + alpha * (|Ax| .* v): 0.01 + 0.01 * 0.5 = 0.015.
  EXPECT_DOUBLE_EQ(0.01 + 0.01 * 0.5, 0.015);

  SparsityProblem problem =
      diag_quadratic_problem(vec({1, 1, 1}), vec({5, -4, 0.3}), 2.0);
  SolverConfig config;
  SolveResult res = adm_solve(problem, config);
  ASSERT_TRUE(res.adm.has_value());
  for (double step : res.adm->min_pi_step) {
    EXPECT_GE(step, -1e-15);  // elementwise non-decreasing multipliers
  }
}

TEST(AdmSolve, FirstIterationIsEtaWeightedL1) {
  SparsityProblem problem =
      diag_quadratic_problem(vec({1, 1}), vec({2, 1}), 1.0);
  SolverConfig config;
  const Eigen::Index m = 2;
  WeightedL1Subproblem sub = adm_x_subproblem(
      problem, Eigen::VectorXd::Ones(m),
      Eigen::VectorXd::Constant(m, config.eta), config.alpha,
      Eigen::VectorXd::Zero(2), config);
  EXPECT_TRUE(sub.w.isApprox(Eigen::VectorXd::Constant(m, config.eta)));
  EXPECT_TRUE(sub.q.isApprox(Eigen::VectorXd::Constant(m, config.alpha)));
}

// L(s^{t+1}) <= L(s^t) - mu/2 ||w^{t+1}-w^t||^2 + 1/alpha ||pi^{t+1}-pi^t||^2.
TEST(AdmSolve, AugmentedLagrangianDescentInequality) {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::Index n = 6;
    Eigen::VectorXd h(n), c(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      h[i] = 0.5 + std::abs(normal(rng));
      c[i] = normal(rng);
    }
    SparsityProblem problem = diag_quadratic_problem(h, c, 2.0);
    SolverConfig config;
    SolveResult res = adm_solve(problem, config);
    ASSERT_TRUE(res.adm.has_value());
    const auto& d = *res.adm;
    for (size_t t = 0; t + 1 < d.aug_lagrangian.size(); ++t) {
      const double lhs = d.aug_lagrangian[t + 1];
      const double rhs = d.aug_lagrangian[t] - 0.5 * config.mu * d.dw_norm2[t] +
                         d.dpi_norm2[t] / config.alpha;
      EXPECT_LE(lhs, rhs + 1e-8);
    }
  }
}

TEST(Solvers, DeterministicTraces) {
  SparsityProblem problem =
      diag_quadratic_problem(vec({1.2, 0.8, 1}), vec({3, -2, 0.4}), 1.0);
  SolverConfig config;
  for (auto solver : {epm_solve, adm_solve}) {
    SolveResult a = solver(problem, config);
    SolveResult b = solver(problem, config);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (size_t i = 0; i < a.trace.size(); ++i) {
      EXPECT_EQ(a.trace[i].objective, b.trace[i].objective);
      EXPECT_EQ(a.trace[i].gap, b.trace[i].gap);
      EXPECT_EQ(a.trace[i].penalty, b.trace[i].penalty);
    }
    EXPECT_EQ(a.x, b.x);
  }
}

TEST(KktResiduals, ConvergedEpmStateIsNearStationary) {
  SparsityProblem problem =
      diag_quadratic_problem(vec({1, 1}), vec({5, 0.1}), 1.0);
  SolverConfig config;
  SolveResult res = epm_solve(problem, config);
  ASSERT_TRUE(res.epm.has_value());
  EpmState state{res.x, res.epm->u_final, res.epm->rho_final,
                 res.outer_iterations};
  KktResiduals r = kkt_residuals(state, problem, config);
  EXPECT_LE(r.stationarity, 1e-5);
  EXPECT_LE(r.feasibility, 1e-5);
  EXPECT_LE(r.dual_feasibility, 1e-9);
}

TEST(KktResiduals, HandBuiltStates) {
  // f with f'(0) = 0: x = 0, u = 0 is stationary and exactly complementary.
  SparsityProblem problem =
      diag_quadratic_problem(vec({1, 1}), vec({0, 0}), 1.0);
  SolverConfig config;
  EpmState state{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2), 0.5, 0};
  KktResiduals r = kkt_residuals(state, problem, config);
  EXPECT_NEAR(r.stationarity, 0.0, 1e-9);
  EXPECT_NEAR(r.feasibility, 0.0, 1e-15);
  EXPECT_NEAR(r.dual_feasibility, 0.0, 1e-15);

  // ||u||_1 = k + 1 -> dual violation exactly 1.
  EpmState bad{Eigen::VectorXd::Zero(2), vec({1, 1}), 0.5, 0};
  KktResiduals rb = kkt_residuals(bad, problem, config);
  EXPECT_NEAR(rb.dual_feasibility, 1.0, 1e-12);
}

TEST(SparsityProblem, ValidationRejectsBadBudgets) {
  SparsityProblem problem = diag_quadratic_problem(vec({1, 1}), vec({1, 1}), 1.0);
  problem.k = 0.0;
  EXPECT_THROW(problem.validate(), Error);
  problem.k = 2.0;  // k == rows
  EXPECT_THROW(problem.validate(), Error);
  problem.k = 1.0;
  problem.objective.lipschitz_f = 0.0;
  EXPECT_THROW(problem.validate(), Error);
}

TEST(CountL0, RelativeThreshold) {
  Eigen::VectorXd z = vec({1.0, 1e-12, 0.5, 0});
  EXPECT_EQ(count_l0(z), 2);
  EXPECT_EQ(count_l0(Eigen::VectorXd::Zero(3)), 0);
}

}  // namespace
}  // namespace smp
