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

#ifndef SPARSEMP_AFFINE_MAP_HPP_
#define SPARSEMP_AFFINE_MAP_HPP_

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "sparsemp/errors.hpp"

namespace smp {

enum class MapKind { kDense, kIdentity, kStacked, kSecondDifference, kGrad2d };

enum class SpectralMethod { kExactSvd, kInversePowerIteration, kUserSupplied };

struct SpectralEstimate {
  double sigma_min = 0.0;  // smallest singular value of the linear part
  SpectralMethod method = SpectralMethod::kExactSvd;
};

// Immutable affine operator x -> A x + b. Covers the structured A matrices
// used by the solvers: dense, identity, stacked blocks, the (n-2) x n second
// difference matrix, and the 2n x n discrete image gradient
// [d/dx; d/dy] with forward differences and replicate (Neumann) boundary.
//
// Values are cheap to copy (blocks are shared) and safe to use from several
// threads concurrently; all operations are const.
class AffineMap {
 public:
  // An empty placeholder map (0 x 0); reassign before use.
  AffineMap() = default;

  static AffineMap dense(Eigen::MatrixXd a);
  static AffineMap identity(Eigen::Index n);
  // Blocks are stacked vertically and must share the column count. Member
  // offsets are not allowed; set the offset on the stacked map instead.
  static AffineMap stacked(std::vector<AffineMap> blocks);
  static AffineMap second_difference(Eigen::Index n);
  static AffineMap grad2d(Eigen::Index height, Eigen::Index width);

  // Returns a copy with offset b so that apply(x) = A x + b.
  AffineMap with_offset(Eigen::VectorXd offset) const;

  MapKind kind() const { return kind_; }
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  bool is_identity() const { return kind_ == MapKind::kIdentity; }
  bool has_offset() const { return offset_.size() > 0; }
  // Zero-extended view; always of length rows().
  Eigen::VectorXd offset() const;

  // A x + b
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  // A x
  Eigen::VectorXd apply_linear(const Eigen::VectorXd& x) const;
  // A^T c (the offset plays no role here)
  Eigen::VectorXd adjoint(const Eigen::VectorXd& c) const;

  // Upper-accurate estimate of ||A||_2 by power iteration on A^T A.
  double operator_norm() const;

  // Smallest singular value sigma(A). Structured kinds use closed forms or an
  // exact dense SVD when small; large instances fall back to inverse power
  // iteration on A A^T. Throws ErrorCode::kRankDeficient when A A^T is
  // (numerically) singular, e.g. for maps with rows() > cols(); callers must
  // then supply an override for any penalty threshold that needs sigma.
  SpectralEstimate smallest_singular_value(double tol = 1e-6) const;

  Eigen::MatrixXd to_dense() const;

 private:
  MapKind kind_ = MapKind::kIdentity;
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  Eigen::Index height_ = 0;  // grad2d only
  Eigen::Index width_ = 0;   // grad2d only
  std::shared_ptr<const Eigen::MatrixXd> matrix_;            // dense only
  std::shared_ptr<const std::vector<AffineMap>> blocks_;     // stacked only
  Eigen::VectorXd offset_;  // empty means zero
};

// Convenience wrapper around AffineMap::smallest_singular_value.
SpectralEstimate estimate_sigma_min(const AffineMap& map, double tol = 1e-6);

// Largest eigenvalue estimate of the symmetric positive semidefinite operator
// v -> adjoint(apply(v)) via power iteration with a fixed deterministic start.
double power_iteration_sym_norm(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& op,
    Eigen::Index n, int max_iter = 500, double tol = 1e-10);

}  // namespace smp

#endif  // SPARSEMP_AFFINE_MAP_HPP_
