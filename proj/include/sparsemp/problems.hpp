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

#ifndef SPARSEMP_PROBLEMS_HPP_
#define SPARSEMP_PROBLEMS_HPP_

#include <cstdint>
#include <vector>

#include "sparsemp/mpec.hpp"

namespace smp {

// ---------------------------------------------------------------------------
// Feature selection: lambda/2 ||x||^2 + sum_i loss(<s_i, x>, y_i), ||x||_0 <= k.

enum class LossKind { kLogistic, kHinge };

struct FeatureSelectionData {
  Eigen::MatrixXd features;  // rows are the samples s_i
  Eigen::VectorXd labels;    // in {-1, +1}
  double lambda = 0.01;
};

// solution_box_radius bounds ||x|| when deriving the Lipschitz constant of f
// (the losses are only Lipschitz on a bounded region once the ridge term is
// present).
SparsityProblem build_feature_selection(const FeatureSelectionData& data,
                                        LossKind loss, double k,
                                        double solution_box_radius = 100.0);

// Gaussian features with labels from a k_true-sparse sign rule.
FeatureSelectionData generate_feature_selection(Eigen::Index samples,
                                                Eigen::Index features,
                                                Eigen::Index k_true,
                                                double lambda, uint64_t seed);

// ---------------------------------------------------------------------------
// Segmented regression: ||A^T (A x - b)||_inf, ||x||_0 <= k.

struct SegmentedRegressionInstance {
  Eigen::MatrixXd design;        // unit-norm columns
  Eigen::VectorXd observations;  // b = A x_true + noise
  Eigen::VectorXd x_true;
  std::vector<Eigen::Index> true_support;
  double sigma_noise = 0.0;
};

// m = n/8 rows, support of size 0.5 * min(m, n) chosen uniformly, standard
// normal amplitudes, b = A x + N(0, sigma^2 I). Deterministic under seed.
SegmentedRegressionInstance generate_segmented_regression(Eigen::Index n,
                                                          double sigma,
                                                          uint64_t seed);

SparsityProblem build_segmented_regression(const SegmentedRegressionInstance& inst,
                                           double k);

// ---------------------------------------------------------------------------
// Trend filtering: 1/2 ||x - y||^2, ||D x||_0 <= k with D second differences.

SparsityProblem build_trend_filtering(const Eigen::VectorXd& series, double k,
                                      double solution_box_radius = 100.0);

// Piecewise-linear signal with `kinks` random slope changes plus Gaussian
// noise; used by the synthetic trend-filtering experiments.
Eigen::VectorXd generate_piecewise_linear_series(Eigen::Index n, int kinks,
                                                 double sigma, uint64_t seed);

// ---------------------------------------------------------------------------
// Binary MRF: 1/2 x^T L x + b^T x over x in {0,1}^n, reformulated through the
// {-1,+1} encoding into || [I;I] x + (-1; +1) ||_0 <= n.

struct MrfInstance {
  Eigen::MatrixXd laplacian;  // symmetric PSD
  Eigen::VectorXd unary;
};

// Throws ErrorCode::kInvalidArgument for non-PSD laplacians (f would not be
// convex). The resulting problem is posed in the {-1,+1} variable; use
// mrf_decode to recover labels.
SparsityProblem build_mrf(const Eigen::MatrixXd& laplacian,
                          const Eigen::VectorXd& unary);

// sign decoding {-1,+1} -> {0,1}; x >= 0 maps to 1.
Eigen::VectorXd mrf_decode(const Eigen::VectorXd& x_pm1);
Eigen::VectorXd mrf_encode(const Eigen::VectorXd& x01);
double mrf_objective(const Eigen::MatrixXd& laplacian,
                     const Eigen::VectorXd& unary, const Eigen::VectorXd& x01);

// Random weighted graph Laplacian (chain plus extra edges) and uniform
// unaries.
MrfInstance generate_mrf(Eigen::Index n, uint64_t seed);

// ---------------------------------------------------------------------------
// Impulse-noise removal: TV(x), ||x - b||_0 <= k over h x w images in [0,1].

struct ImageInstance {
  Eigen::Index height = 0;
  Eigen::Index width = 0;
  Eigen::VectorXd clean;  // row-major pixels in [0,1]
  Eigen::VectorXd noisy;
  double noise_fraction = 0.0;
};

// Random-value impulse noise: floor(fraction * h * w) pixels, chosen without
// replacement, are replaced by independent uniform [0,1] samples.
ImageInstance make_impulse_noisy(Eigen::Index height, Eigen::Index width,
                                 const Eigen::VectorXd& clean, double fraction,
                                 uint64_t seed);

// Blocky piecewise-constant test image (clean == noisy, fraction 0).
ImageInstance generate_piecewise_constant_image(Eigen::Index height,
                                                Eigen::Index width, int blocks,
                                                uint64_t seed);

SparsityProblem build_l0tv(const ImageInstance& image, double k, int p);

struct SnrMetrics {
  double snr0 = 0.0;  // 1 - ||x - clean||_0 / N at threshold 2/255
  double snr1 = 0.0;  // 10 log10(||clean - mean||_1 / ||x - clean||_1)
  double snr2 = 0.0;  // 10 log10(||clean - mean||_2^2 / ||x - clean||_2^2)
};

SnrMetrics snr_metrics(const Eigen::VectorXd& restored,
                       const Eigen::VectorXd& clean);

// ---------------------------------------------------------------------------

// The sparsity grid {0.01, 0.06, ..., 0.96} used by the benchmark sweeps.
std::vector<double> default_sparsity_fractions();

}  // namespace smp

#endif  // SPARSEMP_PROBLEMS_HPP_
