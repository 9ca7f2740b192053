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

#include <Eigen/Cholesky>
#include <cmath>

#include "barrier_impl.hpp"
#include "conjbar/barrier.hpp"
#include "conjbar/errors.hpp"

namespace conjbar {
namespace detail {

ConePoint BarrierImpl::inverse_hessian_apply(const ConePoint&) const {
  throw Error("no closed-form inverse Hessian for this cone");
}

namespace {

using Eigen::ArrayXd;
using Eigen::VectorXd;

// f = -log(v sum log(w/v) - u) - log v - sum log w
class LogBarrier final : public BarrierImpl {
 public:
  LogBarrier(const ConeDescriptor& cone, const ConePoint& w)
      : cone_(cone), u_(w.head[0]), v_(w.persp), w_(w.vec.array()) {
    d_ = static_cast<double>(w_.size());
    phi_ = (w_ / v_).log().sum();
    zeta_ = v_ * phi_ - u_;
  }

  double value() const override {
    return -std::log(zeta_) - std::log(v_) - w_.log().sum();
  }

  ConePoint gradient() const override {
    ConePoint g = zero_point(cone_);
    g.head[0] = 1.0 / zeta_;
    g.persp = -(phi_ - d_) / zeta_ - 1.0 / v_;
    g.vec = (-(v_ / zeta_ + 1.0) / w_).matrix();
    return g;
  }

  ConePoint hessian_apply(const ConePoint& x) const override {
    const double xu = x.head[0];
    const double xv = x.persp;
    const ArrayXd xw = x.vec.array();
    // a = grad zeta = (-1, phi - d, v/w)
    const double ax = -xu + (phi_ - d_) * xv + v_ * (xw / w_).sum();
    const double s = ax / (zeta_ * zeta_);
    ConePoint y = zero_point(cone_);
    y.head[0] = -s;
    y.persp = s * (phi_ - d_) - (-d_ / v_ * xv + (xw / w_).sum()) / zeta_ + xv / (v_ * v_);
    y.vec = (s * v_ / w_ - (xv / w_ - v_ * xw / (w_ * w_)) / zeta_ + xw / (w_ * w_)).matrix();
    return y;
  }

 private:
  ConeDescriptor cone_;
  double u_, v_;
  ArrayXd w_;
  double d_, phi_, zeta_;
};

// f = -log(phi(w) - u) - sum log w,  phi = prod w^alpha
class HPowerBarrier final : public BarrierImpl {
 public:
  HPowerBarrier(const ConeDescriptor& cone, const ConePoint& w, bool closed_form)
      : cone_(cone), closed_form_(closed_form), u_(w.head[0]), w_(w.vec.array()),
        alpha_(cone.alpha().array()) {
    phi_ = std::exp((alpha_ * w_.log()).sum());
    zeta_ = phi_ - u_;
    gu_ = 1.0 / zeta_;
    c_ = alpha_ / w_;
    diag_ = (1.0 + phi_ * alpha_ / zeta_) / (w_ * w_);
  }

  double value() const override { return -std::log(zeta_) - w_.log().sum(); }

  ConePoint gradient() const override {
    ConePoint g = zero_point(cone_);
    g.head[0] = gu_;
    g.vec = (-(phi_ * alpha_ / zeta_ + 1.0) / w_).matrix();
    return g;
  }

  ConePoint hessian_apply(const ConePoint& x) const override {
    const double xu = x.head[0];
    const ArrayXd xw = x.vec.array();
    // a = (1, -phi c)
    const double cx = (c_ * xw).sum();
    const double ax = xu - phi_ * cx;
    const double s = ax / (zeta_ * zeta_);
    ConePoint y = zero_point(cone_);
    y.head[0] = s;
    y.vec = (-s * phi_ * c_ + diag_ * xw - (phi_ / zeta_) * cx * c_).matrix();
    return y;
  }

  bool has_closed_form_inverse() const override { return closed_form_; }

  ConePoint inverse_hessian_apply(const ConePoint& x) const override {
    const double xu = x.head[0];
    const ArrayXd z = x.vec.array();
    const ArrayXd k1 = 1.0 + alpha_ * phi_ * gu_;
    const double k2 = (alpha_ * alpha_ / k1).sum();
    const double k3 = 1.0 - phi_ * gu_ * k2;
    const ArrayXd aw = alpha_ * w_ / k1;
    const double zaw = (z * aw).sum();
    ConePoint y = zero_point(cone_);
    y.head[0] = (zeta_ * zeta_ + (k2 / k3) * phi_ * phi_) * xu + (phi_ / k3) * zaw;
    y.vec = (w_ * w_ * z / k1 + aw * (phi_ / k3) * xu + (gu_ * phi_ / k3) * zaw * aw).matrix();
    return y;
  }

 private:
  ConeDescriptor cone_;
  bool closed_form_;
  double u_;
  ArrayXd w_, alpha_;
  double phi_, zeta_, gu_;
  ArrayXd c_, diag_;
};

// f = -log(phi(w) - |u|^2) - sum (1 - alpha) log w,  phi = prod w^(2 alpha)
class RPowerBarrier final : public BarrierImpl {
 public:
  RPowerBarrier(const ConeDescriptor& cone, const ConePoint& w)
      : cone_(cone), u_(w.head), w_(w.vec.array()), alpha_(cone.alpha().array()) {
    const double root = std::exp((alpha_ * w_.log()).sum());
    const double un = u_.norm();
    phi_ = root * root;
    n_ = u_.squaredNorm();
    zeta_ = (root - un) * (root + un);
    c_ = alpha_ / w_;
    gw_ = -(2.0 * phi_ * alpha_ / zeta_ + 1.0 - alpha_) / w_;
  }

  double value() const override {
    return -std::log(zeta_) - ((1.0 - alpha_) * w_.log()).sum();
  }

  ConePoint gradient() const override {
    ConePoint g = zero_point(cone_);
    g.head = 2.0 * u_ / zeta_;
    g.vec = gw_.matrix();
    return g;
  }

  ConePoint hessian_apply(const ConePoint& x) const override {
    const ArrayXd xw = x.vec.array();
    // a = (-2u, 2 phi c)
    const double cx = (c_ * xw).sum();
    const double ax = -2.0 * u_.dot(x.head) + 2.0 * phi_ * cx;
    const double s = ax / (zeta_ * zeta_);
    ConePoint y = zero_point(cone_);
    y.head = -2.0 * s * u_ + (2.0 / zeta_) * x.head;
    y.vec = (2.0 * s * phi_ * c_ - gw_ / w_ * xw - (4.0 * phi_ / zeta_) * cx * c_).matrix();
    return y;
  }

  bool has_closed_form_inverse() const override { return true; }

  ConePoint inverse_hessian_apply(const ConePoint& x) const override {
    const ArrayXd z = x.vec.array();
    const double k1 = phi_ + n_;
    const ArrayXd ag = alpha_ / gw_;
    const double k2 = (c_ * ag).sum();
    const double k3 = k1 / (2.0 * phi_) + 2.0 * k2 * n_ / zeta_;
    const double xu = x.head.dot(u_);
    const double agz = (ag * z).sum();
    ConePoint y = zero_point(cone_);
    y.head = (zeta_ / 2.0) * x.head +
             (u_ / k3) * (-(zeta_ * k3 + 2.0 * k2 * phi_) / k1 * xu - agz);
    y.vec = (-w_ * z / gw_ - (ag / k3) * (xu - (2.0 * n_ / zeta_) * agz)).matrix();
    return y;
  }

 private:
  ConeDescriptor cone_;
  VectorXd u_;
  ArrayXd w_, alpha_;
  double phi_, n_, zeta_;
  ArrayXd c_, gw_;
};

// f = -sum log(u^2 - w_i^2) + (d - 1) log u
class LInfBarrier final : public BarrierImpl {
 public:
  LInfBarrier(const ConeDescriptor& cone, const ConePoint& w)
      : cone_(cone), u_(w.head[0]), w_(w.vec.array()) {
    d_ = static_cast<double>(w_.size());
    zeta_ = (u_ - w_) * (u_ + w_);
  }

  double value() const override { return -zeta_.log().sum() + (d_ - 1.0) * std::log(u_); }

  ConePoint gradient() const override {
    ConePoint g = zero_point(cone_);
    g.head[0] = (d_ - 1.0) / u_ - (2.0 * u_ / zeta_).sum();
    g.vec = (2.0 * w_ / zeta_).matrix();
    return g;
  }

  ConePoint hessian_apply(const ConePoint& x) const override {
    const double xu = x.head[0];
    const ArrayXd xw = x.vec.array();
    const ArrayXd z2 = zeta_ * zeta_;
    const double huu = (-2.0 / zeta_ + 4.0 * u_ * u_ / z2).sum() - (d_ - 1.0) / (u_ * u_);
    const ArrayXd huw = -4.0 * u_ * w_ / z2;
    const ArrayXd hww = 2.0 / zeta_ + 4.0 * w_ * w_ / z2;
    ConePoint y = zero_point(cone_);
    y.head[0] = huu * xu + (huw * xw).sum();
    y.vec = (huw * xu + hww * xw).matrix();
    return y;
  }

 private:
  ConeDescriptor cone_;
  double u_;
  ArrayXd w_;
  double d_;
  ArrayXd zeta_;
};

}  // namespace

std::unique_ptr<BarrierImpl> make_vector_barrier(const ConeDescriptor& cone, const ConePoint& w) {
  switch (cone.family()) {
    case Family::kLog:
      return std::make_unique<LogBarrier>(cone, w);
    case Family::kHPower:
      return std::make_unique<HPowerBarrier>(cone, w, true);
    case Family::kHGeom:
      return std::make_unique<HPowerBarrier>(cone, w, false);
    case Family::kRPower:
    case Family::kRGeom:
      return std::make_unique<RPowerBarrier>(cone, w);
    case Family::kLInf:
      return std::make_unique<LInfBarrier>(cone, w);
    default:
      throw InvalidArgument("not a vector cone: " + cone.to_string());
  }
}

}  // namespace detail

BarrierWorkspace::BarrierWorkspace(ConeDescriptor cone, ConePoint w)
    : cone_(std::move(cone)), point_(std::move(w)) {
  check_shape(cone_, point_);
  if (!in_interior(cone_, point_)) {
    throw NotInteriorError("barrier evaluated outside the interior of " + cone_.to_string());
  }
  impl_ = cone_.is_matrix() ? detail::make_matrix_barrier(cone_, point_)
                            : detail::make_vector_barrier(cone_, point_);
}

BarrierWorkspace::~BarrierWorkspace() = default;
BarrierWorkspace::BarrierWorkspace(BarrierWorkspace&&) noexcept = default;
BarrierWorkspace& BarrierWorkspace::operator=(BarrierWorkspace&&) noexcept = default;

double BarrierWorkspace::value() const { return impl_->value(); }

const ConePoint& BarrierWorkspace::gradient() const {
  if (!gradient_) gradient_ = impl_->gradient();
  return *gradient_;
}

ConePoint BarrierWorkspace::hessian_apply(const ConePoint& x) const {
  check_shape(cone_, x);
  return impl_->hessian_apply(x);
}

bool BarrierWorkspace::has_closed_form_inverse() const {
  return impl_->has_closed_form_inverse();
}

ConePoint BarrierWorkspace::inverse_hessian_apply(const ConePoint& x) const {
  check_shape(cone_, x);
  if (impl_->has_closed_form_inverse()) return impl_->inverse_hessian_apply(x);
  return inverse_hessian_apply_dense(x);
}

Eigen::MatrixXd BarrierWorkspace::hessian_matrix() const {
  const int n = cone_.flat_size();
  Eigen::MatrixXd h(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    h.col(j) = to_flat(cone_, impl_->hessian_apply(from_flat(cone_, e)));
    e[j] = 0.0;
  }
  return 0.5 * (h + h.transpose());
}

ConePoint BarrierWorkspace::inverse_hessian_apply_dense(const ConePoint& x) const {
  check_shape(cone_, x);
  if (!factor_) {
    factor_.emplace(hessian_matrix());
    if (factor_->info() != Eigen::Success) {
      factor_.reset();
      throw NotPositiveDefinite("Hessian is not positive definite at this point");
    }
  }
  return from_flat(cone_, factor_->solve(to_flat(cone_, x)));
}

double barrier_value(const ConeDescriptor& cone, const ConePoint& w) {
  return BarrierWorkspace(cone, w).value();
}

ConePoint barrier_gradient(const ConeDescriptor& cone, const ConePoint& w) {
  return BarrierWorkspace(cone, w).gradient();
}

ConePoint hessian_apply(const ConeDescriptor& cone, const ConePoint& w, const ConePoint& x) {
  return BarrierWorkspace(cone, w).hessian_apply(x);
}

ConePoint inverse_hessian_apply(const ConeDescriptor& cone, const ConePoint& w,
                                const ConePoint& x) {
  return BarrierWorkspace(cone, w).inverse_hessian_apply(x);
}

}  // namespace conjbar
