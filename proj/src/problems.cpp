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

#include "sparsemp/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

namespace smp {

namespace {

double sample_norm_sum(const Eigen::MatrixXd& features,
                       const Eigen::VectorXd& labels, bool logistic) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    double slope = 1.0;
    if (logistic) {
      // |sigmoid(r) - y| <= 1 for y = +1 and <= 2 for y = -1.
      slope = labels[i] > 0 ? 1.0 : 2.0;
    }
    sum += slope * features.row(i).norm();
  }
  return sum;
}

}  // namespace

SparsityProblem build_feature_selection(const FeatureSelectionData& data,
                                        LossKind loss, double k,
                                        double solution_box_radius) {
  const Eigen::Index n = data.features.cols();
  if (n <= 0) throw_error(ErrorCode::kInvalidArgument, "feature selection: no features");
  if (data.labels.size() != data.features.rows()) {
    throw_error(ErrorCode::kDimensionMismatch,
                "feature selection: labels/features mismatch");
  }
  for (Eigen::Index i = 0; i < data.labels.size(); ++i) {
    if (data.labels[i] != 1.0 && data.labels[i] != -1.0) {
      throw_error(ErrorCode::kInvalidArgument,
                  "feature selection: labels must be -1 or +1");
    }
    if (!data.features.row(i).allFinite()) {
      throw_error(ErrorCode::kInvalidArgument,
                  "feature selection: non-finite feature");
    }
  }
  if (!(k > 0.0) || k >= double(n)) {
    throw_error(ErrorCode::kInvalidArgument, "feature selection: need 0 < k < n");
  }

  SparsityProblem problem;
  problem.constraint_map = AffineMap::identity(n);
  problem.k = k;
  if (loss == LossKind::kLogistic) {
    problem.objective.smooth.push_back(
        make_logistic_term(data.features, data.labels, data.lambda));
    problem.objective.lipschitz_f =
        data.lambda * solution_box_radius +
        sample_norm_sum(data.features, data.labels, true);
  } else {
    problem.objective.smooth.push_back(make_ridge_term(data.lambda, n));
    if (data.features.rows() > 0) {
      problem.objective.prox.push_back(
          make_hinge_prox_term(data.features, data.labels));
    }
    problem.objective.lipschitz_f =
        data.lambda * solution_box_radius +
        sample_norm_sum(data.features, data.labels, false);
  }
  if (!(problem.objective.lipschitz_f > 0.0)) problem.objective.lipschitz_f = 1.0;
  return problem;
}

FeatureSelectionData generate_feature_selection(Eigen::Index samples,
                                                Eigen::Index features,
                                                Eigen::Index k_true,
                                                double lambda, uint64_t seed) {
  if (samples <= 0 || features <= 0 || k_true <= 0 || k_true > features) {
    throw_error(ErrorCode::kInvalidArgument, "generate_feature_selection: bad sizes");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  FeatureSelectionData data;
  data.lambda = lambda;
  data.features.resize(samples, features);
  for (Eigen::Index i = 0; i < samples; ++i) {
    for (Eigen::Index j = 0; j < features; ++j) data.features(i, j) = normal(rng);
  }
  Eigen::VectorXd x_true = Eigen::VectorXd::Zero(features);
  std::vector<Eigen::Index> idx(static_cast<size_t>(features));
  std::iota(idx.begin(), idx.end(), Eigen::Index(0));
  std::shuffle(idx.begin(), idx.end(), rng);
  for (Eigen::Index j = 0; j < k_true; ++j) {
    x_true[idx[size_t(j)]] = normal(rng) >= 0.0 ? 1.0 : -1.0;
  }
  data.labels.resize(samples);
  for (Eigen::Index i = 0; i < samples; ++i) {
    const double score = data.features.row(i).dot(x_true) + 0.1 * normal(rng);
    data.labels[i] = score >= 0.0 ? 1.0 : -1.0;
  }
  return data;
}

SegmentedRegressionInstance generate_segmented_regression(Eigen::Index n,
                                                          double sigma,
                                                          uint64_t seed) {
  if (n < 16) {
    throw_error(ErrorCode::kInvalidArgument,
                "generate_segmented_regression: need n >= 16");
  }
  const Eigen::Index m = n / 8;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  SegmentedRegressionInstance inst;
  inst.sigma_noise = sigma;
  inst.design.resize(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) inst.design(i, j) = normal(rng);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const double norm = inst.design.col(j).norm();
    if (norm > 0.0) inst.design.col(j) /= norm;
  }

  const Eigen::Index support_size = Eigen::Index(0.5 * double(std::min(m, n)));
  std::vector<Eigen::Index> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index(0));
  std::shuffle(idx.begin(), idx.end(), rng);
  inst.true_support.assign(idx.begin(), idx.begin() + support_size);
  std::sort(inst.true_support.begin(), inst.true_support.end());

  inst.x_true = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j : inst.true_support) inst.x_true[j] = normal(rng);

  inst.observations = inst.design * inst.x_true;
  for (Eigen::Index i = 0; i < m; ++i) inst.observations[i] += sigma * normal(rng);
  return inst;
}

SparsityProblem build_segmented_regression(const SegmentedRegressionInstance& inst,
                                           double k) {
  const Eigen::Index n = inst.design.cols();
  SparsityProblem problem;
  problem.constraint_map = AffineMap::identity(n);
  problem.k = k;
  // f(x) = || M x - c ||_inf with M = A^T A, c = A^T b.
  Eigen::MatrixXd gram = inst.design.transpose() * inst.design;
  Eigen::VectorXd atb = inst.design.transpose() * inst.observations;
  AffineMap inner_map = AffineMap::dense(std::move(gram)).with_offset(-atb);
  problem.objective.lipschitz_f = inner_map.operator_norm();
  problem.objective.prox.push_back(make_linf_prox_term(std::move(inner_map)));
  return problem;
}

SparsityProblem build_trend_filtering(const Eigen::VectorXd& series, double k,
                                      double solution_box_radius) {
  const Eigen::Index n = series.size();
  if (n < 3) throw_error(ErrorCode::kInvalidArgument, "trend filtering: need n >= 3");
  if (!(k > 0.0) || k >= double(n - 2)) {
    throw_error(ErrorCode::kInvalidArgument, "trend filtering: need 0 < k < n-2");
  }
  SparsityProblem problem;
  problem.constraint_map = AffineMap::second_difference(n);
  problem.k = k;
  problem.objective.smooth.push_back(
      make_diag_quadratic_term(Eigen::VectorXd::Ones(n), series));
  // ||grad f|| = ||x - y|| <= ||y|| + radius on the reachable set; the bound
  // must scale with the data or the penalty ceiling undershoots the
  // exactness threshold.
  problem.objective.lipschitz_f = solution_box_radius + series.norm();
  return problem;
}

Eigen::VectorXd generate_piecewise_linear_series(Eigen::Index n, int kinks,
                                                 double sigma, uint64_t seed) {
  if (n < 4) throw_error(ErrorCode::kInvalidArgument, "series: need n >= 4");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<Eigen::Index> breaks;
  for (int j = 0; j < kinks; ++j) {
    breaks.push_back(1 + Eigen::Index(uni(rng) * double(n - 2)));
  }
  std::sort(breaks.begin(), breaks.end());

  // Price-like levels: a few hundred in amplitude with per-index moves of a
  // few units and integrated (random-walk) noise, the texture trend
  // filtering is normally run on.
  Eigen::VectorXd y(n);
  double level = 300.0 + 300.0 * uni(rng);
  double slope = 6.0 * uni(rng) - 3.0;
  double walk = 0.0;
  size_t next_break = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (next_break < breaks.size() && i == breaks[next_break]) {
      slope = 6.0 * uni(rng) - 3.0;
      ++next_break;
    }
    walk += sigma * normal(rng);
    y[i] = level + walk;
    level += slope;
  }
  return y;
}

SparsityProblem build_mrf(const Eigen::MatrixXd& laplacian,
                          const Eigen::VectorXd& unary) {
  const Eigen::Index n = unary.size();
  if (laplacian.rows() != n || laplacian.cols() != n) {
    throw_error(ErrorCode::kDimensionMismatch, "mrf: laplacian/unary mismatch");
  }
  if (!laplacian.isApprox(laplacian.transpose(), 1e-10)) {
    throw_error(ErrorCode::kInvalidArgument, "mrf: laplacian must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(laplacian);
  const double lambda_min = eig.eigenvalues().minCoeff();
  const double lambda_max = eig.eigenvalues().maxCoeff();
  if (lambda_min < -1e-9 * std::max(1.0, std::abs(lambda_max))) {
    throw_error(ErrorCode::kInvalidArgument,
                "mrf: laplacian is not positive semidefinite");
  }

  // {0,1} labels x01 relate to the solver variable by x01 = (x + 1)/2, so the
  // objective becomes 1/2 x^T (L/4) x + (L 1 / 4 + b / 2)^T x + const, and
  // binarity is || [I;I] x + (-1;+1) ||_0 <= n.
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  Eigen::MatrixXd q = laplacian / 4.0;
  Eigen::VectorXd lin = laplacian * ones / 4.0 + unary / 2.0;
  const double constant =
      ones.dot(laplacian * ones) / 8.0 + unary.sum() / 2.0;

  SparsityProblem problem;
  std::vector<AffineMap> blocks;
  blocks.push_back(AffineMap::identity(n));
  blocks.push_back(AffineMap::identity(n));
  Eigen::VectorXd offset(2 * n);
  offset.head(n) = -ones;
  offset.tail(n) = ones;
  problem.constraint_map = AffineMap::stacked(std::move(blocks)).with_offset(offset);
  problem.k = double(n);
  problem.objective.smooth.push_back(make_quadratic_term(q, lin, constant));
  // The Laplacian quadratic is flat along the all-ones direction, so the
  // relaxed subproblems are unbounded without the [-1,1] box. The box is the
  // convex hull of the feasible labellings; adding it changes no optimum.
  ProxTerm box;
  box.map = AffineMap::identity(n);
  box.is_indicator = true;
  box.value = [](const Eigen::VectorXd&) { return 0.0; };
  box.prox_inplace = [](Eigen::VectorXd& y, double) {
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = std::clamp(y[i], -1.0, 1.0);
  };
  problem.objective.prox.push_back(std::move(box));
  problem.objective.lipschitz_f =
      std::max(1e-6, lambda_max / 4.0 * std::sqrt(double(n)) + lin.norm());
  return problem;
}

Eigen::VectorXd mrf_decode(const Eigen::VectorXd& x_pm1) {
  Eigen::VectorXd out(x_pm1.size());
  for (Eigen::Index i = 0; i < x_pm1.size(); ++i) out[i] = x_pm1[i] >= 0.0 ? 1.0 : 0.0;
  return out;
}

Eigen::VectorXd mrf_encode(const Eigen::VectorXd& x01) {
  return 2.0 * x01 - Eigen::VectorXd::Ones(x01.size());
}

double mrf_objective(const Eigen::MatrixXd& laplacian,
                     const Eigen::VectorXd& unary, const Eigen::VectorXd& x01) {
  return 0.5 * x01.dot(laplacian * x01) + unary.dot(x01);
}

MrfInstance generate_mrf(Eigen::Index n, uint64_t seed) {
  if (n < 2) throw_error(ErrorCode::kInvalidArgument, "generate_mrf: need n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  MrfInstance inst;
  inst.laplacian = Eigen::MatrixXd::Zero(n, n);
  auto add_edge = [&](Eigen::Index i, Eigen::Index j, double w) {
    inst.laplacian(i, i) += w;
    inst.laplacian(j, j) += w;
    inst.laplacian(i, j) -= w;
    inst.laplacian(j, i) -= w;
  };
  // Segmentation-style instances: a chain plus a few random chords with
  // moderate smoothing weights, and unaries that carry real evidence.
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    add_edge(i, i + 1, 0.05 + 0.45 * uni(rng));
  }
  const Eigen::Index extra = n / 2;
  for (Eigen::Index e = 0; e < extra; ++e) {
    Eigen::Index i = Eigen::Index(uni(rng) * double(n));
    Eigen::Index j = Eigen::Index(uni(rng) * double(n));
    i = std::min(i, n - 1);
    j = std::min(j, n - 1);
    if (i != j) add_edge(i, j, 0.05 + 0.45 * uni(rng));
  }
  inst.unary.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) inst.unary[i] = 4.0 * uni(rng) - 2.0;
  return inst;
}

ImageInstance make_impulse_noisy(Eigen::Index height, Eigen::Index width,
                                 const Eigen::VectorXd& clean, double fraction,
                                 uint64_t seed) {
  const Eigen::Index npix = height * width;
  if (clean.size() != npix) {
    throw_error(ErrorCode::kDimensionMismatch, "make_impulse_noisy: bad image size");
  }
  if (fraction < 0.0 || fraction > 1.0) {
    throw_error(ErrorCode::kInvalidArgument, "make_impulse_noisy: fraction in [0,1]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  ImageInstance inst;
  inst.height = height;
  inst.width = width;
  inst.clean = clean;
  inst.noisy = clean;
  inst.noise_fraction = fraction;
  const Eigen::Index hits = Eigen::Index(std::floor(fraction * double(npix)));
  std::vector<Eigen::Index> idx(static_cast<size_t>(npix));
  std::iota(idx.begin(), idx.end(), Eigen::Index(0));
  std::shuffle(idx.begin(), idx.end(), rng);
  for (Eigen::Index j = 0; j < hits; ++j) {
    inst.noisy[idx[size_t(j)]] = uni(rng);
  }
  return inst;
}

ImageInstance generate_piecewise_constant_image(Eigen::Index height,
                                                Eigen::Index width, int blocks,
                                                uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Eigen::VectorXd img = Eigen::VectorXd::Constant(height * width, 0.5 * uni(rng));
  for (int b = 0; b < blocks; ++b) {
    const Eigen::Index r0 = Eigen::Index(uni(rng) * double(height));
    const Eigen::Index c0 = Eigen::Index(uni(rng) * double(width));
    const Eigen::Index r1 =
        std::min(height, r0 + 1 + Eigen::Index(uni(rng) * double(height) / 2.0));
    const Eigen::Index c1 =
        std::min(width, c0 + 1 + Eigen::Index(uni(rng) * double(width) / 2.0));
    const double level = uni(rng);
    for (Eigen::Index r = r0; r < r1; ++r) {
      for (Eigen::Index c = c0; c < c1; ++c) img[r * width + c] = level;
    }
  }
  ImageInstance inst;
  inst.height = height;
  inst.width = width;
  inst.clean = img;
  inst.noisy = img;
  inst.noise_fraction = 0.0;
  return inst;
}

SparsityProblem build_l0tv(const ImageInstance& image, double k, int p) {
  const Eigen::Index npix = image.height * image.width;
  if (image.noisy.size() != npix) {
    throw_error(ErrorCode::kDimensionMismatch, "build_l0tv: bad image size");
  }
  if (!(k >= 0.0) || k >= double(npix)) {
    throw_error(ErrorCode::kInvalidArgument, "build_l0tv: need 0 <= k < pixels");
  }
  SparsityProblem problem;
  problem.constraint_map = AffineMap::identity(npix).with_offset(-image.noisy);
  problem.k = k;
  AffineMap grad = AffineMap::grad2d(image.height, image.width);
  // TV is Lipschitz with constant ||grad||_2 * sqrt(#groups-ish); sqrt(8) is
  // the usual bound for this forward-difference stencil.
  const double groups = p == 1 ? std::sqrt(2.0 * double(npix)) : std::sqrt(double(npix));
  problem.objective.lipschitz_f = std::sqrt(8.0) * groups;
  problem.objective.prox.push_back(make_tv_prox_term(std::move(grad), p));
  return problem;
}

SnrMetrics snr_metrics(const Eigen::VectorXd& restored,
                       const Eigen::VectorXd& clean) {
  if (restored.size() != clean.size()) {
    throw_error(ErrorCode::kDimensionMismatch, "snr_metrics: shape mismatch");
  }
  const double n = double(clean.size());
  const double threshold = 2.0 / 255.0;
  Eigen::VectorXd err = restored - clean;
  Eigen::Index wrong = 0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    if (std::abs(err[i]) > threshold) ++wrong;
  }
  const double mean = clean.size() > 0 ? clean.mean() : 0.0;
  Eigen::VectorXd centered = clean.array() - mean;

  SnrMetrics out;
  out.snr0 = 1.0 - double(wrong) / n;
  const double inf = std::numeric_limits<double>::infinity();
  const double e1 = err.lpNorm<1>();
  const double e2 = err.squaredNorm();
  out.snr1 = e1 > 0.0 ? 10.0 * std::log10(centered.lpNorm<1>() / e1) : inf;
  out.snr2 = e2 > 0.0 ? 10.0 * std::log10(centered.squaredNorm() / e2) : inf;
  return out;
}

std::vector<double> default_sparsity_fractions() {
  std::vector<double> fractions;
  for (int i = 0; i < 20; ++i) fractions.push_back(0.01 + 0.05 * i);
  return fractions;
}

}  // namespace smp
