// Copyright 2026 The conjbar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "barrier_impl.hpp"
#include "conjbar/errors.hpp"
#include "conjbar/linalg.hpp"

namespace conjbar::detail {

namespace {

using Eigen::ArrayXd;
using Eigen::MatrixXd;

// f = -log(v logdet(W/v) - u) - log v - logdet W
class LogDetBarrier final : public BarrierImpl {
 public:
  LogDetBarrier(const ConeDescriptor& cone, const ConePoint& w)
      : cone_(cone), u_(w.head[0]), v_(w.persp) {
    const SymEigen es = sym_eigen(w.mat);
    lam_ = es.eigenvalues.array();
    vecs_ = es.eigenvectors;
    d_ = static_cast<double>(lam_.size());
    phi_ = (lam_ / v_).log().sum();
    zeta_ = v_ * phi_ - u_;
    c_ = -(v_ / zeta_ + 1.0);
    winv_ = spectral_compose(vecs_, (1.0 / lam_).matrix());
  }

  double value() const override {
    return -std::log(zeta_) - std::log(v_) - lam_.log().sum();
  }

  ConePoint gradient() const override {
    ConePoint g = zero_point(cone_);
    g.head[0] = 1.0 / zeta_;
    g.persp = -(phi_ - d_) / zeta_ - 1.0 / v_;
    g.mat = spectral_compose(vecs_, (c_ / lam_).matrix());
    return g;
  }

  ConePoint hessian_apply(const ConePoint& x) const override {
    const double xu = x.head[0];
    const double xv = x.persp;
    const double t = (winv_.array() * x.mat.array()).sum();
    const double dzeta = -xu + (phi_ - d_) * xv + v_ * t;
    const double dphi = t - d_ * xv / v_;
    const double dc = -(xv / zeta_ - v_ * dzeta / (zeta_ * zeta_));
    ConePoint y = zero_point(cone_);
    y.head[0] = -dzeta / (zeta_ * zeta_);
    y.persp = -dphi / zeta_ + (phi_ - d_) * dzeta / (zeta_ * zeta_) + xv / (v_ * v_);
    y.mat = dc * winv_ - c_ * (winv_ * x.mat * winv_);
    return y;
  }

 private:
  ConeDescriptor cone_;
  double u_, v_;
  ArrayXd lam_;
  MatrixXd vecs_;
  double d_, phi_, zeta_, c_;
  MatrixXd winv_;
};

// f = -log(det(W)^(1/d) - u) - logdet W
class RtDetBarrier final : public BarrierImpl {
 public:
  RtDetBarrier(const ConeDescriptor& cone, const ConePoint& w) : cone_(cone), u_(w.head[0]) {
    const SymEigen es = sym_eigen(w.mat);
    lam_ = es.eigenvalues.array();
    vecs_ = es.eigenvectors;
    n_ = static_cast<double>(lam_.size());
    phi_ = std::exp(lam_.log().sum() / n_);
    zeta_ = phi_ - u_;
    c_ = -(phi_ / (n_ * zeta_) + 1.0);
    winv_ = spectral_compose(vecs_, (1.0 / lam_).matrix());
  }

  double value() const override { return -std::log(zeta_) - lam_.log().sum(); }

  ConePoint gradient() const override {
    ConePoint g = zero_point(cone_);
    g.head[0] = 1.0 / zeta_;
    g.mat = spectral_compose(vecs_, (c_ / lam_).matrix());
    return g;
  }

  ConePoint hessian_apply(const ConePoint& x) const override {
    const double xu = x.head[0];
    const double t = (winv_.array() * x.mat.array()).sum();
    const double dphi = phi_ * t / n_;
    const double dzeta = dphi - xu;
    const double dc = -(dphi / (n_ * zeta_) - phi_ * dzeta / (n_ * zeta_ * zeta_));
    ConePoint y = zero_point(cone_);
    y.head[0] = -dzeta / (zeta_ * zeta_);
    y.mat = dc * winv_ - c_ * (winv_ * x.mat * winv_);
    return y;
  }

 private:
  ConeDescriptor cone_;
  double u_;
  ArrayXd lam_;
  MatrixXd vecs_;
  double n_, phi_, zeta_, c_;
  MatrixXd winv_;
};

// f = -logdet(u^2 I - W W^T) + (d1 - 1) log u
class LSpecBarrier final : public BarrierImpl {
 public:
  LSpecBarrier(const ConeDescriptor& cone, const ConePoint& w)
      : cone_(cone), u_(w.head[0]), w_(w.mat) {
    const Svd s = svd(w.mat);
    sigma_ = s.sigma.array();
    left_ = s.u;
    right_ = s.v;
    d1_ = static_cast<double>(sigma_.size());
    z_ = (u_ - sigma_) * (u_ + sigma_);
    zinv_ = spectral_compose(left_, (1.0 / z_).matrix());
    trzinv_ = (1.0 / z_).sum();
  }

  double value() const override { return -z_.log().sum() + (d1_ - 1.0) * std::log(u_); }

  ConePoint gradient() const override {
    ConePoint g = zero_point(cone_);
    g.head[0] = (d1_ - 1.0) / u_ - 2.0 * u_ * trzinv_;
    g.mat = left_ * (2.0 * sigma_ / z_).matrix().asDiagonal() * right_.transpose();
    return g;
  }

  ConePoint hessian_apply(const ConePoint& x) const override {
    const double xu = x.head[0];
    const MatrixXd xwt = x.mat * w_.transpose();
    MatrixXd dz = -(xwt + xwt.transpose());
    dz.diagonal().array() += 2.0 * u_ * xu;
    const MatrixXd zdz = zinv_ * dz * zinv_;
    ConePoint y = zero_point(cone_);
    y.head[0] = -2.0 * xu * trzinv_ + 2.0 * u_ * zdz.trace() - (d1_ - 1.0) * xu / (u_ * u_);
    y.mat = 2.0 * (zinv_ * x.mat - zdz * w_);
    return y;
  }

 private:
  ConeDescriptor cone_;
  double u_;
  MatrixXd w_;
  ArrayXd sigma_;
  MatrixXd left_, right_;
  double d1_;
  ArrayXd z_;
  MatrixXd zinv_;
  double trzinv_;
};

}  // namespace

std::unique_ptr<BarrierImpl> make_matrix_barrier(const ConeDescriptor& cone, const ConePoint& w) {
  switch (cone.family()) {
    case Family::kLogDet:
      return std::make_unique<LogDetBarrier>(cone, w);
    case Family::kRtDet:
      return std::make_unique<RtDetBarrier>(cone, w);
    case Family::kLSpec:
      return std::make_unique<LSpecBarrier>(cone, w);
    default:
      throw InvalidArgument("not a matrix cone: " + cone.to_string());
  }
}

}  // namespace conjbar::detail
