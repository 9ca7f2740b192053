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

#pragma once

#include <Eigen/Core>
#include <utility>

#include "conjbar/cone.hpp"
#include "conjbar/scalar.hpp"

namespace conjbar {

/// Output of a conjugate-gradient oracle g*(r).
struct ConjugateResult {
  ConePoint g_star;
  int iterations = 0;     // Newton-Raphson steps; 0 for closed forms
  double residual = 0.0;  // |<g*, r> + nu|
  bool converged = false;
};

/// |<g_star, r> + nu|. Throws ShapeError on layout mismatch.
double residual(const ConeDescriptor& cone, const ConePoint& g_star, const ConePoint& r);

/// Conjugate barrier gradient g*(r) by the specialized per-family procedures:
/// Wright omega for the logarithm cones, a monotone univariate Newton-Raphson
/// for the hypograph and radial power cones and the infinity norm cone
/// (closed forms for equal powers), and spectral lifts of the vector
/// procedures for the matrix cones.
///
/// Throws ShapeError / NotInteriorError unless dual_in_interior(cone, r).
/// Root-finding failure is reported through `converged`, which also requires
/// -g* to be interior to the primal cone.
ConjugateResult conjugate_gradient(const ConeDescriptor& cone, const ConePoint& r);

/// Conjugate barrier value f*(r). Closed forms for the logarithm and
/// geometric-mean hypograph cones, -nu - f(-g*(r)) otherwise.
double conjugate_value(const ConeDescriptor& cone, const ConePoint& r);

/// f*(r) = -nu - f(-g*(r)) for every family; reference for the closed forms.
double conjugate_value_via_gradient(const ConeDescriptor& cone, const ConePoint& r);

// ---------------------------------------------------------------------------
// Univariate reductions. Each functor returns {h(y), h'(y)} and throws
// DomainError outside the domain of h.
// ---------------------------------------------------------------------------

/// h(y) = sum_i alpha_i log(y - p alpha_i) - log prod_i r_i^alpha_i, with
/// p < 0 and r > 0. Increasing and concave on y > max_i p alpha_i; the root is
/// positive and Newton converges monotonically from 0.
class HPowerRootFunction {
 public:
  HPowerRootFunction(Eigen::VectorXd alpha, double p, const Eigen::VectorXd& r);
  std::pair<double, double> operator()(double y) const;
  static double start() { return 0.0; }

 private:
  Eigen::VectorXd alpha_;
  double p_;
  double log_phi_r_;
};

/// Radial power reduction for scalar p > 0:
/// h(y) = sum_i 2 alpha_i log(2 alpha_i y^2 + 2y(1 + alpha_i)/p)
///        - log phi(r) - log(2y/p + y^2) - 2 log(2y/p),  phi(r) = prod r^(2 alpha).
/// Decreasing and convex on y > 0.
///
/// `start()` is the equal-powers root for the same phi(r), a lower bound on
/// the root. `upper_start()` is the equal-powers root for the phi that puts
/// the equal-powers dual boundary where the actual one is, an upper bound
/// (by concavity of the logarithm) that tracks the root as p approaches the
/// boundary.
class RPowerRootFunction {
 public:
  RPowerRootFunction(Eigen::VectorXd alpha, double p, const Eigen::VectorXd& r);
  std::pair<double, double> operator()(double y) const;
  double start() const;
  double upper_start() const;

  /// Root by Newton-Raphson from upper_start(). The first step from the upper
  /// bound lands below the root and is clamped at start(); from there the
  /// iteration increases monotonically. The first step is counted.
  RootResult solve(const StopRule& stop = {}) const;

 private:
  Eigen::VectorXd alpha_;
  double p_;
  double log_phi_r_;  // sum 2 alpha_i log r_i
  double log_bound_;  // sum alpha_i log(r_i / alpha_i)
};

/// Equal-powers radial root for p >= 0, in a cancellation-free form:
/// y = p [(d+1) + C d (d^2-1) / (sqrt(C (C d^2 + p^2 (d^2-1))) + C d)]
///       / ((sqrt(C) d - p)(sqrt(C) d + p)),   C = phi(r).
double rpower_equal_root(double p, double log_phi_r, int d2);

/// h(y) = p y + sum_i sqrt(1 + r_i^2 y^2) + 1 in double-double, p > ||r||_1.
/// Increasing and convex; Newton converges monotonically from `start()`, the
/// smaller of the upper bounds -1/(p - ||r||_1) and -(d+1)/p.
class LInfRootFunction {
 public:
  LInfRootFunction(double p, Eigen::VectorXd r);
  std::pair<DoubleDouble, DoubleDouble> operator()(const DoubleDouble& y) const;
  double start() const;

 private:
  double p_;
  Eigen::VectorXd r_;
};

}  // namespace conjbar
