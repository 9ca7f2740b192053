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

#include "conjbar/cone.hpp"

#include <cmath>
#include <sstream>

#include "conjbar/errors.hpp"
#include "conjbar/linalg.hpp"

namespace conjbar {

namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
};

constexpr FamilyInfo kFamilyNames[] = {
    {Family::kLog, "log"},       {Family::kLogDet, "logdet"}, {Family::kHPower, "hpower"},
    {Family::kHGeom, "hgeom"},   {Family::kRtDet, "rtdet"},   {Family::kRPower, "rpower"},
    {Family::kRGeom, "rgeom"},   {Family::kLInf, "linf"},     {Family::kLSpec, "lspec"},
};

void require_positive(int d, const char* what) {
  if (d < 1) throw InvalidArgument(std::string(what) + " must be positive");
}

bool all_positive(const Eigen::VectorXd& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) return false;
  }
  return true;
}

// Eigenvalues of a symmetric block, or nullopt if the block is not symmetric
// enough to decompose.
std::optional<Eigen::VectorXd> eigenvalues_of(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) return std::nullopt;
  try {
    return sym_eigen(m).eigenvalues;
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

double sum_log(const Eigen::VectorXd& x) { return x.array().log().sum(); }

}  // namespace

std::string_view family_name(Family family) {
  for (const auto& f : kFamilyNames) {
    if (f.family == family) return f.name;
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& f : kFamilyNames) {
    if (f.name == name) return f.family;
  }
  return std::nullopt;
}

bool is_matrix_family(Family family) {
  return family == Family::kLogDet || family == Family::kRtDet || family == Family::kLSpec;
}

PowerParams::PowerParams(Eigen::VectorXd alpha) : alpha_(std::move(alpha)) {
  if (alpha_.size() == 0) throw InvalidArgument("power weights must be non-empty");
  for (Eigen::Index i = 0; i < alpha_.size(); ++i) {
    if (!(alpha_[i] > 0.0) || !std::isfinite(alpha_[i])) {
      throw InvalidArgument("power weights must be positive and finite");
    }
  }
  if (std::abs(alpha_.sum() - 1.0) > kSumTolerance) {
    throw InvalidArgument("power weights must sum to one");
  }
}

PowerParams PowerParams::uniform(int d) {
  require_positive(d, "dimension");
  return PowerParams(Eigen::VectorXd::Constant(d, 1.0 / d));
}

ConeDescriptor::ConeDescriptor(Family family, int d1, int d2, Eigen::VectorXd alpha)
    : family_(family), d1_(d1), d2_(d2), alpha_(std::move(alpha)) {}

ConeDescriptor ConeDescriptor::log(int d) {
  require_positive(d, "dimension");
  return {Family::kLog, 1, d, {}};
}

ConeDescriptor ConeDescriptor::logdet(int d) {
  require_positive(d, "dimension");
  return {Family::kLogDet, 1, d, {}};
}

ConeDescriptor ConeDescriptor::hpower(PowerParams powers) {
  const int d = powers.size();
  return {Family::kHPower, 1, d, powers.alpha()};
}

ConeDescriptor ConeDescriptor::hgeom(int d) {
  return {Family::kHGeom, 1, d, PowerParams::uniform(d).alpha()};
}

ConeDescriptor ConeDescriptor::rtdet(int d) {
  return {Family::kRtDet, 1, d, PowerParams::uniform(d).alpha()};
}

ConeDescriptor ConeDescriptor::rpower(int d1, PowerParams powers) {
  require_positive(d1, "d1");
  const int d2 = powers.size();
  return {Family::kRPower, d1, d2, powers.alpha()};
}

ConeDescriptor ConeDescriptor::rgeom(int d2) {
  return {Family::kRGeom, 1, d2, PowerParams::uniform(d2).alpha()};
}

ConeDescriptor ConeDescriptor::linf(int d) {
  require_positive(d, "dimension");
  return {Family::kLInf, 1, d, {}};
}

ConeDescriptor ConeDescriptor::lspec(int d1, int d2) {
  require_positive(d1, "d1");
  require_positive(d2, "d2");
  if (d1 > d2) throw InvalidArgument("lspec requires d1 <= d2");
  return {Family::kLSpec, d1, d2, {}};
}

int ConeDescriptor::dim() const { return family_ == Family::kLSpec ? d1_ : d2_; }

double ConeDescriptor::nu() const {
  switch (family_) {
    case Family::kLog:
    case Family::kLogDet:
      return 2.0 + d2_;
    case Family::kHPower:
    case Family::kHGeom:
    case Family::kRtDet:
    case Family::kLInf:
    case Family::kRPower:
    case Family::kRGeom:
      return 1.0 + d2_;
    case Family::kLSpec:
      return 1.0 + d1_;
  }
  return 0.0;
}

bool ConeDescriptor::has_persp() const {
  return family_ == Family::kLog || family_ == Family::kLogDet;
}

int ConeDescriptor::head_size() const {
  return (family_ == Family::kRPower || family_ == Family::kRGeom) ? d1_ : 1;
}

int ConeDescriptor::vec_size() const { return is_matrix() ? 0 : d2_; }

int ConeDescriptor::mat_rows() const {
  if (!is_matrix()) return 0;
  return family_ == Family::kLSpec ? d1_ : d2_;
}

int ConeDescriptor::mat_cols() const { return is_matrix() ? d2_ : 0; }

bool ConeDescriptor::symmetric_matrix() const {
  return family_ == Family::kLogDet || family_ == Family::kRtDet;
}

int ConeDescriptor::flat_size() const {
  int n = head_size() + (has_persp() ? 1 : 0) + vec_size();
  if (symmetric_matrix()) {
    n += d2_ * (d2_ + 1) / 2;
  } else {
    n += mat_rows() * mat_cols();
  }
  return n;
}

std::string ConeDescriptor::to_string() const {
  std::ostringstream os;
  os << family_name(family_) << "(";
  switch (family_) {
    case Family::kRPower:
      os << "d1=" << d1_ << ", d2=" << d2_;
      break;
    case Family::kRGeom:
      os << "d2=" << d2_;
      break;
    case Family::kLSpec:
      os << d1_ << "x" << d2_;
      break;
    default:
      os << "d=" << d2_;
  }
  os << ")";
  return os.str();
}

ConePoint zero_point(const ConeDescriptor& cone) {
  ConePoint x;
  x.head = Eigen::VectorXd::Zero(cone.head_size());
  x.vec = Eigen::VectorXd::Zero(cone.vec_size());
  x.mat = Eigen::MatrixXd::Zero(cone.mat_rows(), cone.mat_cols());
  return x;
}

bool has_shape(const ConeDescriptor& cone, const ConePoint& x) {
  return x.head.size() == cone.head_size() && x.vec.size() == cone.vec_size() &&
         x.mat.rows() == cone.mat_rows() && x.mat.cols() == cone.mat_cols();
}

void check_shape(const ConeDescriptor& cone, const ConePoint& x) {
  if (!has_shape(cone, x)) {
    throw ShapeError("point layout does not match " + cone.to_string());
  }
}

double dot(const ConeDescriptor& cone, const ConePoint& a, const ConePoint& b) {
  check_shape(cone, a);
  check_shape(cone, b);
  double s = a.head.dot(b.head) + a.vec.dot(b.vec);
  if (cone.has_persp()) s += a.persp * b.persp;
  if (cone.is_matrix()) s += (a.mat.array() * b.mat.array()).sum();
  return s;
}

double norm(const ConeDescriptor& cone, const ConePoint& a) {
  return std::sqrt(dot(cone, a, a));
}

ConePoint operator+(const ConePoint& a, const ConePoint& b) {
  return {a.head + b.head, a.persp + b.persp, a.vec + b.vec, a.mat + b.mat};
}

ConePoint operator-(const ConePoint& a, const ConePoint& b) {
  return {a.head - b.head, a.persp - b.persp, a.vec - b.vec, a.mat - b.mat};
}

ConePoint operator-(const ConePoint& a) { return {-a.head, -a.persp, -a.vec, -a.mat}; }

ConePoint operator*(double s, const ConePoint& a) {
  return {s * a.head, s * a.persp, s * a.vec, s * a.mat};
}

Eigen::VectorXd to_flat(const ConeDescriptor& cone, const ConePoint& x) {
  check_shape(cone, x);
  Eigen::VectorXd out(cone.flat_size());
  int k = 0;
  for (Eigen::Index i = 0; i < x.head.size(); ++i) out[k++] = x.head[i];
  if (cone.has_persp()) out[k++] = x.persp;
  for (Eigen::Index i = 0; i < x.vec.size(); ++i) out[k++] = x.vec[i];
  if (cone.symmetric_matrix()) {
    const double rt2 = std::sqrt(2.0);
    for (Eigen::Index j = 0; j < x.mat.cols(); ++j) {
      out[k++] = x.mat(j, j);
      for (Eigen::Index i = j + 1; i < x.mat.rows(); ++i) out[k++] = rt2 * x.mat(i, j);
    }
  } else {
    for (Eigen::Index i = 0; i < x.mat.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.mat.cols(); ++j) out[k++] = x.mat(i, j);
    }
  }
  return out;
}

ConePoint from_flat(const ConeDescriptor& cone, const Eigen::VectorXd& flat) {
  if (flat.size() != cone.flat_size()) {
    throw ShapeError("flat vector length does not match " + cone.to_string());
  }
  ConePoint x = zero_point(cone);
  int k = 0;
  for (Eigen::Index i = 0; i < x.head.size(); ++i) x.head[i] = flat[k++];
  if (cone.has_persp()) x.persp = flat[k++];
  for (Eigen::Index i = 0; i < x.vec.size(); ++i) x.vec[i] = flat[k++];
  if (cone.symmetric_matrix()) {
    const double irt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < x.mat.cols(); ++j) {
      x.mat(j, j) = flat[k++];
      for (Eigen::Index i = j + 1; i < x.mat.rows(); ++i) {
        x.mat(i, j) = x.mat(j, i) = irt2 * flat[k++];
      }
    }
  } else {
    for (Eigen::Index i = 0; i < x.mat.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.mat.cols(); ++j) x.mat(i, j) = flat[k++];
    }
  }
  return x;
}

bool in_interior(const ConeDescriptor& cone, const ConePoint& w) {
  check_shape(cone, w);
  const double u = w.head[0];
  switch (cone.family()) {
    case Family::kLog: {
      const double v = w.persp;
      if (!(v > 0.0) || !all_positive(w.vec)) return false;
      const double phi = (w.vec.array() / v).log().sum();
      return u < v * phi;
    }
    case Family::kLogDet: {
      const double v = w.persp;
      const auto lam = eigenvalues_of(w.mat);
      if (!(v > 0.0) || !lam || !all_positive(*lam)) return false;
      return u < v * (sum_log(*lam) - cone.d2() * std::log(v));
    }
    case Family::kHPower:
    case Family::kHGeom: {
      if (!all_positive(w.vec)) return false;
      return u < std::exp(cone.alpha().dot(w.vec.array().log().matrix()));
    }
    case Family::kRtDet: {
      const auto lam = eigenvalues_of(w.mat);
      if (!lam || !all_positive(*lam)) return false;
      return u < std::exp(sum_log(*lam) / cone.d2());
    }
    case Family::kRPower:
    case Family::kRGeom: {
      if (!all_positive(w.vec)) return false;
      return w.head.norm() < std::exp(cone.alpha().dot(w.vec.array().log().matrix()));
    }
    case Family::kLInf:
      return w.vec.size() == 0 ? u > 0.0 : u > w.vec.cwiseAbs().maxCoeff();
    case Family::kLSpec: {
      if (!w.mat.allFinite()) return false;
      return u > svd(w.mat).sigma[0];
    }
  }
  return false;
}

bool dual_in_interior(const ConeDescriptor& cone, const ConePoint& r) {
  check_shape(cone, r);
  const double p = r.head[0];
  switch (cone.family()) {
    case Family::kLog: {
      const double q = r.persp;
      if (!(p < 0.0) || !all_positive(r.vec)) return false;
      const double d = cone.d2();
      return q > p * ((r.vec.array() / -p).log().sum() + d);
    }
    case Family::kLogDet: {
      const double q = r.persp;
      const auto lam = eigenvalues_of(r.mat);
      if (!(p < 0.0) || !lam || !all_positive(*lam)) return false;
      const double d = cone.d2();
      return q > p * ((lam->array() / -p).log().sum() + d);
    }
    case Family::kHPower:
    case Family::kHGeom: {
      if (!(p < 0.0) || !all_positive(r.vec)) return false;
      const Eigen::ArrayXd a = cone.alpha().array();
      return -p < std::exp((a * (r.vec.array() / a).log()).sum());
    }
    case Family::kRtDet: {
      const auto lam = eigenvalues_of(r.mat);
      if (!(p < 0.0) || !lam || !all_positive(*lam)) return false;
      const double d = cone.d2();
      return -p < d * std::exp(sum_log(*lam) / d);
    }
    case Family::kRPower:
    case Family::kRGeom: {
      if (!all_positive(r.vec)) return false;
      const Eigen::ArrayXd a = cone.alpha().array();
      return r.head.norm() < std::exp((a * (r.vec.array() / a).log()).sum());
    }
    case Family::kLInf:
      return p > r.vec.lpNorm<1>();
    case Family::kLSpec: {
      if (!r.mat.allFinite()) return false;
      return p > svd(r.mat).sigma.sum();
    }
  }
  return false;
}

}  // namespace conjbar
