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

#include <cmath>
#include <limits>
#include <utility>

#include "conjbar/errors.hpp"

namespace conjbar {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Wright omega function: the unique positive w with w + log(w) = beta.
/// Throws DomainError for non-finite beta. Underflows to 0 below about -745.
double wright_omega(double beta);

// ---------------------------------------------------------------------------
// Double-double arithmetic
// ---------------------------------------------------------------------------

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2, about 106 bits of
/// significand.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi(x) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

/// s + e == a + b exactly.
inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

/// Requires |a| >= |b|.
inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

/// p + e == a * b exactly (needs a hardware fma for speed, not correctness).
inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b);
DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b);
DoubleDouble operator-(const DoubleDouble& a);
DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b);
DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b);
DoubleDouble sqrt(const DoubleDouble& a);
DoubleDouble abs(const DoubleDouble& a);

inline bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DoubleDouble& a, const DoubleDouble& b) { return b < a; }
inline bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
  return a.hi == b.hi && a.lo == b.lo;
}

inline double to_double(double x) { return x; }
inline double to_double(const DoubleDouble& x) { return x.to_double(); }

// ---------------------------------------------------------------------------
// Univariate Newton-Raphson
// ---------------------------------------------------------------------------

enum class RootStatus {
  kConverged,
  kZeroDerivative,
  kIterationCap,
  kStagnated,  // step below tolerance while the residual test still fails
  kDomainError,
  kNonFinite,
};

/// Stopping rule. With scale = 1 + |h(y0)|, iteration stops once
/// |h(y)| <= h_target * scale, a step satisfies |dy| <= step_tol * (1 + |y|),
/// or |h| stops decreasing inside h_tol * scale. The result counts as
/// converged when |h(y)| <= h_tol * scale.
struct StopRule {
  double h_target = 4.0 * kEps;
  double h_tol = 1e3 * kEps;
  double step_tol = 4.0 * kEps;
  int max_iterations = 64;
};

template <typename T>
struct BasicRootResult {
  T root{};
  int iterations = 0;  // accepted Newton steps
  bool converged = false;
  double final_residual = 0.0;  // |h(root)|
  RootStatus status = RootStatus::kIterationCap;
};

using RootResult = BasicRootResult<double>;

/// Plain Newton-Raphson y <- y - h(y)/h'(y) from y0.
///
/// `h_and_deriv(y)` returns {h(y), h'(y)} and may throw DomainError, which
/// ends the iteration with status kDomainError. Convergence is only claimed
/// when the residual test passes; a tiny step with a large residual is
/// reported as not converged. The caller picks y0 on the side of the root
/// from which the iteration is monotone.
template <typename T, typename F>
BasicRootResult<T> newton_raphson(F&& h_and_deriv, T y0, const StopRule& stop = {}) {
  using std::abs;
  BasicRootResult<T> out;
  out.root = y0;

  std::pair<T, T> hd;
  try {
    hd = h_and_deriv(y0);
  } catch (const DomainError&) {
    out.status = RootStatus::kDomainError;
    return out;
  }
  const double scale = 1.0 + std::abs(to_double(hd.first));
  const double h_target = stop.h_target * scale;
  const double h_tol = stop.h_tol * scale;
  out.final_residual = std::abs(to_double(hd.first));
  if (!std::isfinite(out.final_residual)) {
    out.status = RootStatus::kNonFinite;
    return out;
  }
  if (out.final_residual <= h_target) {
    out.converged = true;
    out.status = RootStatus::kConverged;
    return out;
  }

  T y = y0;
  for (int k = 1; k <= stop.max_iterations; ++k) {
    if (to_double(hd.second) == 0.0) {
      out.status = RootStatus::kZeroDerivative;
      return out;
    }
    const T step = hd.first / hd.second;
    y = y - step;
    out.root = y;
    out.iterations = k;
    try {
      hd = h_and_deriv(y);
    } catch (const DomainError&) {
      out.status = RootStatus::kDomainError;
      return out;
    }
    const double prev_residual = out.final_residual;
    out.final_residual = std::abs(to_double(hd.first));
    if (!std::isfinite(out.final_residual)) {
      out.status = RootStatus::kNonFinite;
      return out;
    }
    const bool small_h = out.final_residual <= h_target;
    const bool small_step =
        std::abs(to_double(step)) <= stop.step_tol * (1.0 + std::abs(to_double(y)));
    const bool no_progress = out.final_residual <= h_tol && out.final_residual >= prev_residual;
    if (small_h || small_step || no_progress) {
      out.converged = out.final_residual <= h_tol;
      out.status = out.converged ? RootStatus::kConverged : RootStatus::kStagnated;
      return out;
    }
  }
  out.status = RootStatus::kIterationCap;
  return out;
}

}  // namespace conjbar
