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

#include "sparsemp/affine_map.hpp"

#include <cmath>
#include <random>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

namespace smp {

namespace {

void check_length(const Eigen::VectorXd& v, Eigen::Index expected,
                  const char* what) {
  if (v.size() != expected) {
    throw_error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": got length " + std::to_string(v.size()) +
                    ", expected " + std::to_string(expected));
  }
}

Eigen::VectorXd deterministic_unit_vector(Eigen::Index n) {
  std::mt19937_64 rng(0x5eedu);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(rng);
  double norm = v.norm();
  if (norm == 0.0) v.setOnes(), norm = std::sqrt(double(n));
  return v / norm;
}

}  // namespace

AffineMap AffineMap::dense(Eigen::MatrixXd a) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw_error(ErrorCode::kInvalidArgument, "dense map must be non-empty");
  }
  AffineMap m;
  m.kind_ = MapKind::kDense;
  m.rows_ = a.rows();
  m.cols_ = a.cols();
  m.matrix_ = std::make_shared<const Eigen::MatrixXd>(std::move(a));
  return m;
}

AffineMap AffineMap::identity(Eigen::Index n) {
  if (n <= 0) throw_error(ErrorCode::kInvalidArgument, "identity: n must be positive");
  AffineMap m;
  m.kind_ = MapKind::kIdentity;
  m.rows_ = n;
  m.cols_ = n;
  return m;
}

AffineMap AffineMap::stacked(std::vector<AffineMap> blocks) {
  if (blocks.empty()) {
    throw_error(ErrorCode::kInvalidArgument, "stacked: need at least one block");
  }
  Eigen::Index cols = blocks.front().cols();
  Eigen::Index rows = 0;
  for (const AffineMap& b : blocks) {
    if (b.cols() != cols) {
      throw_error(ErrorCode::kDimensionMismatch,
                  "stacked: blocks must share the column count");
    }
    if (b.has_offset()) {
      throw_error(ErrorCode::kInvalidArgument,
                  "stacked: member offsets are not supported; "
                  "set the offset on the stacked map");
    }
    rows += b.rows();
  }
  AffineMap m;
  m.kind_ = MapKind::kStacked;
  m.rows_ = rows;
  m.cols_ = cols;
  m.blocks_ = std::make_shared<const std::vector<AffineMap>>(std::move(blocks));
  return m;
}

AffineMap AffineMap::second_difference(Eigen::Index n) {
  if (n < 3) {
    throw_error(ErrorCode::kInvalidArgument,
                "second_difference: need n >= 3");
  }
  AffineMap m;
  m.kind_ = MapKind::kSecondDifference;
  m.rows_ = n - 2;
  m.cols_ = n;
  return m;
}

AffineMap AffineMap::grad2d(Eigen::Index height, Eigen::Index width) {
  if (height <= 0 || width <= 0) {
    throw_error(ErrorCode::kInvalidArgument, "grad2d: bad dimensions");
  }
  AffineMap m;
  m.kind_ = MapKind::kGrad2d;
  m.height_ = height;
  m.width_ = width;
  m.rows_ = 2 * height * width;
  m.cols_ = height * width;
  return m;
}

AffineMap AffineMap::with_offset(Eigen::VectorXd offset) const {
  check_length(offset, rows_, "with_offset");
  AffineMap m = *this;
  m.offset_ = std::move(offset);
  return m;
}

Eigen::VectorXd AffineMap::offset() const {
  if (offset_.size() > 0) return offset_;
  return Eigen::VectorXd::Zero(rows_);
}

Eigen::VectorXd AffineMap::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out = apply_linear(x);
  if (offset_.size() > 0) out += offset_;
  return out;
}

Eigen::VectorXd AffineMap::apply_linear(const Eigen::VectorXd& x) const {
  check_length(x, cols_, "apply");
  switch (kind_) {
    case MapKind::kDense:
      return *matrix_ * x;
    case MapKind::kIdentity:
      return x;
    case MapKind::kStacked: {
      Eigen::VectorXd out(rows_);
      Eigen::Index at = 0;
      for (const AffineMap& b : *blocks_) {
        out.segment(at, b.rows()) = b.apply_linear(x);
        at += b.rows();
      }
      return out;
    }
    case MapKind::kSecondDifference: {
      Eigen::VectorXd out(rows_);
      for (Eigen::Index i = 0; i < rows_; ++i) {
        out[i] = x[i] - 2.0 * x[i + 1] + x[i + 2];
      }
      return out;
    }
    case MapKind::kGrad2d: {
      // Row-major pixel layout, p = r * width + c. The first height*width
      // entries are horizontal forward differences, the second block is
      // vertical; the last column/row replicate, so the difference is zero.
      Eigen::VectorXd out = Eigen::VectorXd::Zero(rows_);
      const Eigen::Index hw = height_ * width_;
      for (Eigen::Index r = 0; r < height_; ++r) {
        for (Eigen::Index c = 0; c < width_; ++c) {
          const Eigen::Index p = r * width_ + c;
          if (c + 1 < width_) out[p] = x[p + 1] - x[p];
          if (r + 1 < height_) out[hw + p] = x[p + width_] - x[p];
        }
      }
      return out;
    }
  }
  throw_error(ErrorCode::kInvalidArgument, "apply: unknown map kind");
}

Eigen::VectorXd AffineMap::adjoint(const Eigen::VectorXd& c) const {
  check_length(c, rows_, "adjoint");
  switch (kind_) {
    case MapKind::kDense:
      return matrix_->transpose() * c;
    case MapKind::kIdentity:
      return c;
    case MapKind::kStacked: {
      Eigen::VectorXd out = Eigen::VectorXd::Zero(cols_);
      Eigen::Index at = 0;
      for (const AffineMap& b : *blocks_) {
        out += b.adjoint(c.segment(at, b.rows()));
        at += b.rows();
      }
      return out;
    }
    case MapKind::kSecondDifference: {
      Eigen::VectorXd out = Eigen::VectorXd::Zero(cols_);
      for (Eigen::Index i = 0; i < rows_; ++i) {
        out[i] += c[i];
        out[i + 1] -= 2.0 * c[i];
        out[i + 2] += c[i];
      }
      return out;
    }
    case MapKind::kGrad2d: {
      Eigen::VectorXd out = Eigen::VectorXd::Zero(cols_);
      const Eigen::Index hw = height_ * width_;
      for (Eigen::Index r = 0; r < height_; ++r) {
        for (Eigen::Index c0 = 0; c0 < width_; ++c0) {
          const Eigen::Index p = r * width_ + c0;
          if (c0 + 1 < width_) {
            out[p + 1] += c[p];
            out[p] -= c[p];
          }
          if (r + 1 < height_) {
            out[p + width_] += c[hw + p];
            out[p] -= c[hw + p];
          }
        }
      }
      return out;
    }
  }
  throw_error(ErrorCode::kInvalidArgument, "adjoint: unknown map kind");
}

Eigen::MatrixXd AffineMap::to_dense() const {
  if (kind_ == MapKind::kDense) return *matrix_;
  Eigen::MatrixXd out(rows_, cols_);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(cols_);
  for (Eigen::Index j = 0; j < cols_; ++j) {
    e[j] = 1.0;
    out.col(j) = apply_linear(e);
    e[j] = 0.0;
  }
  return out;
}

double power_iteration_sym_norm(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& op,
    Eigen::Index n, int max_iter, double tol) {
  Eigen::VectorXd v = deterministic_unit_vector(n);
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = op(v);
    double norm = w.norm();
    if (norm <= 1e-300) return 0.0;
    double next = v.dot(w);
    w /= norm;
    if (it > 0 && std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
    v = std::move(w);
  }
  return std::max(lambda, 0.0);
}

double AffineMap::operator_norm() const {
  if (kind_ == MapKind::kIdentity) return 1.0;
  auto op = [this](const Eigen::VectorXd& v) { return adjoint(apply_linear(v)); };
  return std::sqrt(power_iteration_sym_norm(op, cols_));
}

SpectralEstimate AffineMap::smallest_singular_value(double tol) const {
  if (kind_ == MapKind::kIdentity) {
    return {1.0, SpectralMethod::kExactSvd};
  }
  if (rows_ > cols_) {
    throw_error(ErrorCode::kRankDeficient,
                "sigma(A): map has more rows than columns, so A A^T is "
                "singular; supply a sigma override");
  }
  if (std::min(rows_, cols_) <= 512) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(to_dense());
    const auto& sv = svd.singularValues();
    double smax = sv[0];
    double smin = sv[sv.size() - 1];
    if (smin <= 1e-12 * std::max(1.0, smax)) {
      throw_error(ErrorCode::kRankDeficient,
                  "sigma(A): A A^T is numerically singular; supply a sigma "
                  "override");
    }
    return {smin, SpectralMethod::kExactSvd};
  }

  // Inverse power iteration on A A^T. The second-difference map gets a sparse
  // factorization; everything else goes through a dense one.
  const Eigen::Index m = rows_;
  Eigen::VectorXd v = deterministic_unit_vector(m);
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> solve;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> mult =
      [this](const Eigen::VectorXd& u) { return apply_linear(adjoint(u)); };

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> sparse_ldlt;
  Eigen::LDLT<Eigen::MatrixXd> dense_ldlt;
  if (kind_ == MapKind::kSecondDifference) {
    std::vector<Eigen::Triplet<double>> trips;
    // (D D^T)_{ij} with D the banded second-difference stencil (1,-2,1).
    const double band[3] = {6.0, -4.0, 1.0};
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index off = -2; off <= 2; ++off) {
        Eigen::Index j = i + off;
        if (j < 0 || j >= m) continue;
        trips.emplace_back(i, j, band[std::abs(off)]);
      }
    }
    Eigen::SparseMatrix<double> ddt(m, m);
    ddt.setFromTriplets(trips.begin(), trips.end());
    sparse_ldlt.compute(ddt);
    if (sparse_ldlt.info() != Eigen::Success) {
      throw_error(ErrorCode::kRankDeficient,
                  "sigma(A): factorization of A A^T failed");
    }
    solve = [&sparse_ldlt](const Eigen::VectorXd& u) {
      return sparse_ldlt.solve(u).eval();
    };
  } else {
    Eigen::MatrixXd a = to_dense();
    dense_ldlt.compute(a * a.transpose());
    if (dense_ldlt.info() != Eigen::Success) {
      throw_error(ErrorCode::kRankDeficient,
                  "sigma(A): factorization of A A^T failed; supply a sigma "
                  "override");
    }
    solve = [&dense_ldlt](const Eigen::VectorXd& u) {
      return dense_ldlt.solve(u).eval();
    };
  }

  double lambda = 0.0;
  const int max_iter = 2000;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd y = solve(v);
    double norm = y.norm();
    if (!std::isfinite(norm) || norm <= 1e-300) {
      throw_error(ErrorCode::kRankDeficient,
                  "sigma(A): A A^T is numerically singular; supply a sigma "
                  "override");
    }
    y /= norm;
    double next = y.dot(mult(y));  // Rayleigh quotient on A A^T
    if (it > 0 && std::abs(next - lambda) <= tol * std::max(next, 1e-30)) {
      lambda = next;
      break;
    }
    lambda = next;
    v = std::move(y);
  }
  if (lambda <= 0.0) {
    throw_error(ErrorCode::kRankDeficient,
                "sigma(A): A A^T is numerically singular; supply a sigma "
                "override");
  }
  return {std::sqrt(lambda), SpectralMethod::kInversePowerIteration};
}

SpectralEstimate estimate_sigma_min(const AffineMap& map, double tol) {
  return map.smallest_singular_value(tol);
}

}  // namespace smp
