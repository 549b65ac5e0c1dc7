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

#include "sparsemp/objective.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

namespace smp {

double ObjectiveSpec::smooth_lipschitz_grad() const {
  double sum = 0.0;
  for (const SmoothTerm& t : smooth) sum += t.lipschitz_grad;
  return sum;
}

double ObjectiveSpec::smooth_value(const Eigen::VectorXd& x,
                                   Eigen::VectorXd* grad) const {
  double val = 0.0;
  for (const SmoothTerm& t : smooth) val += t.eval(x, grad);
  return val;
}

double ObjectiveSpec::value(const Eigen::VectorXd& x) const {
  double val = smooth_value(x, nullptr);
  for (const ProxTerm& t : prox) {
    if (t.is_indicator) continue;
    val += t.value(t.map.apply(x));
  }
  return val;
}

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double t) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = soft_threshold(v[i], t);
  return out;
}

void prox_weighted_l1_quad(Eigen::VectorXd& r, double step,
                           const Eigen::VectorXd& w, const Eigen::VectorXd& q,
                           const Eigen::VectorXd& g) {
  const Eigen::Index m = r.size();
  for (Eigen::Index i = 0; i < m; ++i) {
    double v = r[i];
    if (g.size() > 0) v -= step * g[i];
    if (w.size() > 0) v = soft_threshold(v, step * w[i]);
    if (q.size() > 0) v /= 1.0 + step * q[i];
    r[i] = v;
  }
}

double weighted_l1_quad_value(const Eigen::VectorXd& z,
                              const Eigen::VectorXd& w,
                              const Eigen::VectorXd& q,
                              const Eigen::VectorXd& g) {
  double val = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (w.size() > 0) val += w[i] * std::abs(z[i]);
    if (q.size() > 0) val += 0.5 * q[i] * z[i] * z[i];
    if (g.size() > 0) val += g[i] * z[i];
  }
  return val;
}

double hinge_value(const Eigen::VectorXd& margins) {
  double val = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    val += std::max(0.0, 1.0 - margins[i]);
  }
  return val;
}

Eigen::VectorXd prox_hinge(const Eigen::VectorXd& margins, double step) {
  Eigen::VectorXd out(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    const double m = margins[i];
    if (m >= 1.0) {
      out[i] = m;
    } else if (m < 1.0 - step) {
      out[i] = m + step;
    } else {
      out[i] = 1.0;
    }
  }
  return out;
}

Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& r, double radius) {
  if (radius < 0.0) throw_error(ErrorCode::kInvalidArgument, "project_l1_ball: radius < 0");
  const double l1 = r.lpNorm<1>();
  if (l1 <= radius) return r;
  if (radius == 0.0) return Eigen::VectorXd::Zero(r.size());
  // Classic sort-based simplex projection on |r|.
  std::vector<double> mags(size_t(r.size()));
  for (Eigen::Index i = 0; i < r.size(); ++i) mags[size_t(i)] = std::abs(r[i]);
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  double cum = 0.0;
  double theta = 0.0;
  for (size_t j = 0; j < mags.size(); ++j) {
    cum += mags[j];
    const double cand = (cum - radius) / double(j + 1);
    if (j + 1 == mags.size() || mags[j + 1] <= cand) {
      theta = cand;
      break;
    }
  }
  Eigen::VectorXd out(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    out[i] = soft_threshold(r[i], theta);
  }
  return out;
}

Eigen::VectorXd prox_linf(const Eigen::VectorXd& r, double step) {
  if (!(step > 0.0)) throw_error(ErrorCode::kInvalidArgument, "prox_linf: step must be positive");
  return r - project_l1_ball(r, step);
}

double tv_value(const Eigen::VectorXd& gxgy, int p) {
  const Eigen::Index n = gxgy.size() / 2;
  if (gxgy.size() != 2 * n) {
    throw_error(ErrorCode::kDimensionMismatch, "tv_value: expected stacked (gx; gy)");
  }
  double val = 0.0;
  if (p == 1) {
    val = gxgy.lpNorm<1>();
  } else if (p == 2) {
    for (Eigen::Index i = 0; i < n; ++i) {
      val += std::hypot(gxgy[i], gxgy[n + i]);
    }
  } else {
    throw_error(ErrorCode::kInvalidArgument, "tv_value: p must be 1 or 2");
  }
  return val;
}

Eigen::VectorXd prox_tv_groups(const Eigen::VectorXd& gxgy, double step, int p) {
  const Eigen::Index n = gxgy.size() / 2;
  if (gxgy.size() != 2 * n) {
    throw_error(ErrorCode::kDimensionMismatch, "prox_tv_groups: expected stacked (gx; gy)");
  }
  Eigen::VectorXd out(gxgy.size());
  if (p == 1) {
    out = soft_threshold(gxgy, step);
  } else if (p == 2) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double norm = std::hypot(gxgy[i], gxgy[n + i]);
      const double scale = norm > step ? 1.0 - step / norm : 0.0;
      out[i] = scale * gxgy[i];
      out[n + i] = scale * gxgy[n + i];
    }
  } else {
    throw_error(ErrorCode::kInvalidArgument, "prox_tv_groups: p must be 1 or 2");
  }
  return out;
}

namespace {

// log(1 + exp(r)) without overflow.
double softplus(double r) {
  if (r > 0.0) return r + std::log1p(std::exp(-r));
  return std::log1p(std::exp(r));
}

double sigmoid(double r) {
  if (r >= 0.0) return 1.0 / (1.0 + std::exp(-r));
  const double e = std::exp(r);
  return e / (1.0 + e);
}

}  // namespace

double logistic_value_grad(const Eigen::MatrixXd& features,
                           const Eigen::VectorXd& labels, double lambda,
                           const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
  if (features.rows() != labels.size()) {
    throw_error(ErrorCode::kDimensionMismatch, "logistic: features/labels mismatch");
  }
  double val = 0.5 * lambda * x.squaredNorm();
  if (grad) *grad += lambda * x;
  if (features.rows() == 0) return val;
  Eigen::VectorXd r = features * x;
  Eigen::VectorXd resid(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    val += softplus(r[i]) - r[i] * labels[i];
    resid[i] = sigmoid(r[i]) - labels[i];
  }
  if (grad) *grad += features.transpose() * resid;
  return val;
}

SmoothTerm make_logistic_term(Eigen::MatrixXd features, Eigen::VectorXd labels,
                              double lambda) {
  auto s = std::make_shared<Eigen::MatrixXd>(std::move(features));
  auto y = std::make_shared<Eigen::VectorXd>(std::move(labels));
  double snorm2 = 0.0;
  if (s->rows() > 0) {
    AffineMap sm = AffineMap::dense(*s);
    const double sn = sm.operator_norm();
    snorm2 = sn * sn;
  }
  SmoothTerm t;
  t.lipschitz_grad = snorm2 / 4.0 + lambda;
  t.eval = [s, y, lambda](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    return logistic_value_grad(*s, *y, lambda, x, grad);
  };
  return t;
}

SmoothTerm make_diag_quadratic_term(Eigen::VectorXd curvature,
                                    Eigen::VectorXd center) {
  if (curvature.size() != center.size()) {
    throw_error(ErrorCode::kDimensionMismatch, "diag quadratic: size mismatch");
  }
  auto h = std::make_shared<Eigen::VectorXd>(std::move(curvature));
  auto c = std::make_shared<Eigen::VectorXd>(std::move(center));
  SmoothTerm t;
  t.lipschitz_grad = h->size() > 0 ? h->maxCoeff() : 0.0;
  t.eval = [h, c](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    Eigen::VectorXd diff = x - *c;
    if (grad) *grad += h->cwiseProduct(diff);
    return 0.5 * diff.cwiseProduct(diff).dot(*h);
  };
  return t;
}

SmoothTerm make_quadratic_term(Eigen::MatrixXd q_matrix, Eigen::VectorXd q_lin,
                               double constant) {
  if (q_matrix.rows() != q_matrix.cols() || q_matrix.rows() != q_lin.size()) {
    throw_error(ErrorCode::kDimensionMismatch, "quadratic term: size mismatch");
  }
  auto q = std::make_shared<Eigen::MatrixXd>(std::move(q_matrix));
  auto lin = std::make_shared<Eigen::VectorXd>(std::move(q_lin));
  SmoothTerm t;
  t.lipschitz_grad = power_iteration_sym_norm(
      [q](const Eigen::VectorXd& v) { return (*q * v).eval(); }, q->rows());
  t.eval = [q, lin, constant](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    Eigen::VectorXd qx = *q * x;
    if (grad) *grad += qx + *lin;
    return 0.5 * x.dot(qx) + lin->dot(x) + constant;
  };
  return t;
}

SmoothTerm make_ridge_term(double lambda, Eigen::Index) {
  SmoothTerm t;
  t.lipschitz_grad = lambda;
  t.eval = [lambda](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    if (grad) *grad += lambda * x;
    return 0.5 * lambda * x.squaredNorm();
  };
  return t;
}

ProxTerm make_hinge_prox_term(const Eigen::MatrixXd& features,
                              const Eigen::VectorXd& labels) {
  if (features.rows() != labels.size()) {
    throw_error(ErrorCode::kDimensionMismatch, "hinge: features/labels mismatch");
  }
  Eigen::MatrixXd margins_mat = labels.asDiagonal() * features;
  ProxTerm t;
  t.map = AffineMap::dense(std::move(margins_mat));
  t.value = [](const Eigen::VectorXd& m) { return hinge_value(m); };
  t.prox_inplace = [](Eigen::VectorXd& m, double step) { m = prox_hinge(m, step); };
  return t;
}

ProxTerm make_linf_prox_term(AffineMap map) {
  ProxTerm t;
  t.map = std::move(map);
  t.value = [](const Eigen::VectorXd& y) { return y.lpNorm<Eigen::Infinity>(); };
  t.prox_inplace = [](Eigen::VectorXd& y, double step) { y = prox_linf(y, step); };
  return t;
}

ProxTerm make_tv_prox_term(AffineMap grad_map, int p) {
  if (p != 1 && p != 2) throw_error(ErrorCode::kInvalidArgument, "tv: p must be 1 or 2");
  ProxTerm t;
  t.map = std::move(grad_map);
  t.value = [p](const Eigen::VectorXd& y) { return tv_value(y, p); };
  t.prox_inplace = [p](Eigen::VectorXd& y, double step) {
    y = prox_tv_groups(y, step, p);
  };
  return t;
}

}  // namespace smp
