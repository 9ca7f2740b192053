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

#include <optional>
#include <utility>
#include <vector>

#include "conjbar/cone.hpp"
#include "conjbar/conjugate.hpp"
#include "conjbar/scalar.hpp"

namespace conjbar {

enum class NewtonStatus { kConverged, kStalled, kIterationCap, kLeftInterior };

std::string_view newton_status_name(NewtonStatus status);

struct NewtonTrace {
  int iterations = 0;
  std::vector<double> lambdas;  // lambda before the first step, then after each step
  NewtonStatus status = NewtonStatus::kIterationCap;
};

struct NewtonOptions {
  double eps = 1000.0 * kEps;
  int max_iterations = 1000;
  int max_backtracks = 20;
};

/// (3 - sqrt 5)/2: below this Newton decrement full steps converge
/// quadratically.
inline constexpr double kQuadraticRegion = 0.3819660112501051;

/// Newton decrement lambda = sqrt(<g(w) + r, H(w)^{-1} (g(w) + r)>).
double local_norm_lambda(const ConeDescriptor& cone, const ConePoint& w, const ConePoint& r);

/// Same quantity through sqrt(nu - 2<w, r> + <r, H(w)^{-1} r>), clamped at 0.
/// Loses absolute accuracy ~sqrt(eps * nu) near the minimizer.
double local_norm_lambda_simplified(const ConeDescriptor& cone, const ConePoint& w,
                                    const ConePoint& r);

/// A fixed interior point of the cone rescaled so that <w0, r> = nu.
ConePoint default_initial_point(const ConeDescriptor& cone, const ConePoint& r);

/// Computes g*(r) by minimizing <r, w> + f(w) with damped Newton steps
/// (step 1/(1 + lambda)) while lambda > (3 - sqrt 5)/2 and full steps after.
///
/// Stops when lambda <= eps, on the slow-progress test
/// lambda_j > 1000 (lambda_{j-1} / (1 - lambda_{j-1}))^2 in the damped
/// region, at the iteration cap, or when a step cannot be kept interior by
/// halving. On a stall the iterate with the smallest lambda is returned.
/// `converged` in the result is true only for NewtonStatus::kConverged.
///
/// Throws ShapeError / NotInteriorError / InvalidArgument for malformed
/// input (non-interior r or w0, eps <= 0).
std::pair<ConjugateResult, NewtonTrace> generic_conjugate_gradient(
    const ConeDescriptor& cone, const ConePoint& r, const NewtonOptions& options = {},
    const std::optional<ConePoint>& w0 = std::nullopt);

}  // namespace conjbar
