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

#include "conjbar/conjugate.hpp"

#include <cmath>

#include "conjbar/barrier.hpp"
#include "conjbar/errors.hpp"
#include "conjbar/linalg.hpp"

namespace conjbar {

namespace {

using Eigen::ArrayXd;
using Eigen::VectorXd;

// Conjugate gradient of a vector cone at spectral data; the matrix cones lift
// this back through their decomposition.
struct VecConj {
  VectorXd head;
  double persp = 0.0;
  VectorXd vec;
  int iterations = 0;
  bool root_ok = true;
};

VecConj log_conj(double p, double q, const ArrayXd& r) {
  const double d = static_cast<double>(r.size());
  const double beta = (1.0 + d - q / p + (r / -p).log().sum()) / d - std::log(d);
  const double wb = d * wright_omega(beta);
  const double den = p * (1.0 - wb);
  VecConj out;
  out.head = VectorXd::Constant(1, (-d - 2.0 + q / p + 2.0 * wb) / den);
  out.persp = -1.0 / den;
  out.vec = (wb / (r * (1.0 - wb))).matrix();
  return out;
}

double log_conj_value(double p, double q, const ArrayXd& r) {
  const double d = static_cast<double>(r.size());
  const double beta = (1.0 + d - q / p + (r / -p).log().sum()) / d - std::log(d);
  const double wb = d * wright_omega(beta);
  return -2.0 - d - 2.0 * std::log(-p) - (d + 1.0) * std::log(wb - 1.0) + d * std::log(wb) -
         r.log().sum();
}

VecConj hpower_conj(const ArrayXd& alpha, double p, const ArrayXd& r) {
  const HPowerRootFunction h(alpha.matrix(), p, r.matrix());
  const RootResult root = newton_raphson(h, HPowerRootFunction::start());
  const double y = root.root;
  VecConj out;
  out.head = VectorXd::Constant(1, -1.0 / p - 1.0 / y);
  out.vec = ((p * alpha / y - 1.0) / r).matrix();
  out.iterations = root.iterations;
  out.root_ok = root.converged;
  return out;
}

VecConj hgeom_conj(double p, const ArrayXd& r) {
  const double d = static_cast<double>(r.size());
  const double phi = std::exp(r.log().sum() / d);
  const double den = phi + p / d;
  VecConj out;
  out.head = VectorXd::Constant(1, -1.0 / p - 1.0 / den);
  out.vec = (-phi / (r * den)).matrix();
  return out;
}

double hgeom_conj_value(double p, const ArrayXd& r) {
  const double d = static_cast<double>(r.size());
  const double phi = std::exp(r.log().sum() / d);
  return -1.0 - d - d * std::log1p(p / (d * phi)) - std::log(-p) - r.log().sum();
}

VecConj rpower_conj(const ConeDescriptor& cone, const ConePoint& r, bool equal_powers) {
  const ArrayXd alpha = cone.alpha().array();
  const ArrayXd rv = r.vec.array();
  const double pn = r.head.norm();
  VecConj out;
  out.head = VectorXd::Zero(r.head.size());
  if (pn <= 1e2 * kEps * norm(cone, r)) {
    out.vec = (-(1.0 + alpha) / rv).matrix();
    return out;
  }
  double y;
  if (equal_powers) {
    y = rpower_equal_root(pn, 2.0 * (alpha * rv.log()).sum(), static_cast<int>(rv.size()));
  } else {
    const RPowerRootFunction h(alpha.matrix(), pn, r.vec);
    const RootResult root = h.solve();
    y = root.root;
    out.iterations = root.iterations;
    out.root_ok = root.converged;
  }
  out.head = (y / pn) * r.head;
  out.vec = (-(alpha * (1.0 + pn * y) + 1.0) / rv).matrix();
  return out;
}

VecConj linf_conj(double p, const ArrayXd& r) {
  const double d = static_cast<double>(r.size());
  VecConj out;
  double y;
  if ((r == 0.0).all()) {
    y = -(d + 1.0) / p;
  } else {
    const LInfRootFunction h(p, r.matrix());
    const BasicRootResult<DoubleDouble> root = newton_raphson(h, DoubleDouble(h.start()));
    y = root.root.to_double();
    out.iterations = root.iterations;
    out.root_ok = root.converged;
  }
  out.head = VectorXd::Constant(1, y);
  out.vec = (r * y * y / ((1.0 + (y * r).square()).sqrt() + 1.0)).matrix();
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Root functions
// ---------------------------------------------------------------------------

HPowerRootFunction::HPowerRootFunction(VectorXd alpha, double p, const VectorXd& r)
    : alpha_(std::move(alpha)), p_(p) {
  log_phi_r_ = alpha_.dot(r.array().log().matrix());
}

std::pair<double, double> HPowerRootFunction::operator()(double y) const {
  const ArrayXd a = alpha_.array();
  const ArrayXd t = y - p_ * a;
  if (!(t > 0.0).all()) throw DomainError("hpower root function: y outside domain");
  return {(a * t.log()).sum() - log_phi_r_, (a / t).sum()};
}

RPowerRootFunction::RPowerRootFunction(VectorXd alpha, double p, const VectorXd& r)
    : alpha_(std::move(alpha)), p_(p) {
  log_phi_r_ = 2.0 * alpha_.dot(r.array().log().matrix());
  log_bound_ = (alpha_.array() * (r.array() / alpha_.array()).log()).sum();
}

// Evaluated through s = p y.
std::pair<double, double> RPowerRootFunction::operator()(double y) const {
  if (!(y > 0.0)) throw DomainError("rpower root function: y must be positive");
  const ArrayXd a = alpha_.array();
  const double s = p_ * y;
  const ArrayXd t = 1.0 + a + a * s;
  const double h = 2.0 * (a * t.log()).sum() - log_phi_r_ + 2.0 * std::log(p_) - std::log(s) -
                   std::log(s + 2.0);
  const double dh = p_ * (2.0 * (a * a / t).sum() - 1.0 / s - 1.0 / (s + 2.0));
  return {h, dh};
}

double RPowerRootFunction::start() const {
  return rpower_equal_root(p_, log_phi_r_, static_cast<int>(alpha_.size()));
}

double RPowerRootFunction::upper_start() const {
  const double d = static_cast<double>(alpha_.size());
  return rpower_equal_root(p_, 2.0 * (log_bound_ - std::log(d)), static_cast<int>(alpha_.size()));
}

RootResult RPowerRootFunction::solve(const StopRule& stop) const {
  const double y0 = upper_start();
  const auto [h0, dh0] = (*this)(y0);
  if (h0 >= 0.0 || dh0 == 0.0) return newton_raphson(*this, y0, stop);
  const double y1 = std::max(y0 - h0 / dh0, start());
  RootResult out = newton_raphson(*this, y1, stop);
  ++out.iterations;
  return out;
}

double rpower_equal_root(double p, double log_phi_r, int d2) {
  const double c = std::exp(log_phi_r);
  const double d = static_cast<double>(d2);
  const double rc = std::exp(0.5 * log_phi_r);
  const double ps = std::sqrt(c * (c * d * d + p * p * (d * d - 1.0)));
  const double num = (d + 1.0) + c * d * (d * d - 1.0) / (ps + c * d);
  return p * num / ((rc * d - p) * (rc * d + p));
}

LInfRootFunction::LInfRootFunction(double p, VectorXd r) : p_(p), r_(std::move(r)) {}

std::pair<DoubleDouble, DoubleDouble> LInfRootFunction::operator()(const DoubleDouble& y) const {
  DoubleDouble h = DoubleDouble(p_) * y + DoubleDouble(1.0);
  DoubleDouble dh(p_);
  for (Eigen::Index i = 0; i < r_.size(); ++i) {
    const DoubleDouble ri(r_[i]);
    const DoubleDouble ry = ri * y;
    const DoubleDouble s = sqrt(DoubleDouble(1.0) + ry * ry);
    h = h + s;
    dh = dh + ri * ry / s;
  }
  return {h, dh};
}

double LInfRootFunction::start() const {
  const double d = static_cast<double>(r_.size());
  return std::min(-1.0 / (p_ - r_.lpNorm<1>()), -(d + 1.0) / p_);
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

double residual(const ConeDescriptor& cone, const ConePoint& g_star, const ConePoint& r) {
  return std::abs(dot(cone, g_star, r) + cone.nu());
}

ConjugateResult conjugate_gradient(const ConeDescriptor& cone, const ConePoint& r) {
  check_shape(cone, r);
  if (!dual_in_interior(cone, r)) {
    throw NotInteriorError("conjugate gradient requested outside the dual interior of " +
                           cone.to_string());
  }
  const double p = r.head[0];
  ConjugateResult out;
  out.g_star = zero_point(cone);
  VecConj vc;
  double spectral_dot = 0.0;

  switch (cone.family()) {
    case Family::kLog:
      vc = log_conj(p, r.persp, r.vec.array());
      break;
    case Family::kHPower:
      vc = hpower_conj(cone.alpha().array(), p, r.vec.array());
      break;
    case Family::kHGeom:
      vc = hgeom_conj(p, r.vec.array());
      break;
    case Family::kRPower:
      vc = rpower_conj(cone, r, false);
      break;
    case Family::kRGeom:
      vc = rpower_conj(cone, r, true);
      break;
    case Family::kLInf:
      vc = linf_conj(p, r.vec.array());
      break;
    case Family::kLogDet:
    case Family::kRtDet: {
      const SymEigen es = sym_eigen(r.mat);
      const ArrayXd lam = es.eigenvalues.array();
      vc = cone.family() == Family::kLogDet ? log_conj(p, r.persp, lam) : hgeom_conj(p, lam);
      out.g_star.mat = spectral_compose(es.eigenvectors, vc.vec);
      spectral_dot = vc.vec.dot(lam.matrix());
      break;
    }
    case Family::kLSpec: {
      const Svd s = svd(r.mat);
      vc = linf_conj(p, s.sigma.array());
      out.g_star.mat = s.u * vc.vec.asDiagonal() * s.v.transpose();
      spectral_dot = vc.vec.dot(s.sigma);
      break;
    }
  }

  out.g_star.head = vc.head;
  if (cone.has_persp()) out.g_star.persp = vc.persp;
  if (cone.is_matrix()) {
    double ip = vc.head.dot(r.head) + spectral_dot;
    if (cone.has_persp()) ip += vc.persp * r.persp;
    out.residual = std::abs(ip + cone.nu());
  } else {
    out.g_star.vec = vc.vec;
    out.residual = residual(cone, out.g_star, r);
  }
  out.iterations = vc.iterations;
  out.converged = vc.root_ok && out.g_star.head.allFinite() && std::isfinite(out.residual) &&
                  in_interior(cone, -out.g_star);
  return out;
}

double conjugate_value_via_gradient(const ConeDescriptor& cone, const ConePoint& r) {
  const ConjugateResult c = conjugate_gradient(cone, r);
  return -cone.nu() - barrier_value(cone, -c.g_star);
}

double conjugate_value(const ConeDescriptor& cone, const ConePoint& r) {
  check_shape(cone, r);
  if (!dual_in_interior(cone, r)) {
    throw NotInteriorError("conjugate value requested outside the dual interior of " +
                           cone.to_string());
  }
  switch (cone.family()) {
    case Family::kLog:
      return log_conj_value(r.head[0], r.persp, r.vec.array());
    case Family::kLogDet:
      return log_conj_value(r.head[0], r.persp, sym_eigen(r.mat).eigenvalues.array());
    case Family::kHGeom:
      return hgeom_conj_value(r.head[0], r.vec.array());
    case Family::kRtDet:
      return hgeom_conj_value(r.head[0], sym_eigen(r.mat).eigenvalues.array());
    default:
      return conjugate_value_via_gradient(cone, r);
  }
}

}  // namespace conjbar
