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

#include "conjbar/generic_newton.hpp"

#include <cmath>

#include "conjbar/barrier.hpp"
#include "conjbar/errors.hpp"

namespace conjbar {

namespace {

// Workspace at one iterate together with the Newton direction and decrement.
struct NewtonPoint {
  ConePoint w;
  ConePoint direction;
  double lambda = 0.0;
};

std::optional<NewtonPoint> evaluate(const ConeDescriptor& cone, ConePoint w, const ConePoint& r) {
  if (!in_interior(cone, w)) return std::nullopt;
  try {
    const BarrierWorkspace ws(cone, w);
    const ConePoint grad = ws.gradient() + r;
    ConePoint dir = ws.inverse_hessian_apply(grad);
    const double lam2 = dot(cone, grad, dir);
    if (!std::isfinite(lam2)) return std::nullopt;
    return NewtonPoint{std::move(w), std::move(dir), std::sqrt(std::max(lam2, 0.0))};
  } catch (const NotPositiveDefinite&) {
    return std::nullopt;
  } catch (const NotInteriorError&) {
    return std::nullopt;
  }
}

ConePoint canonical_point(const ConeDescriptor& cone) {
  ConePoint w = zero_point(cone);
  switch (cone.family()) {
    case Family::kLog:
      w.head[0] = -1.0;
      w.persp = 1.0;
      w.vec.setOnes();
      break;
    case Family::kLogDet:
      w.head[0] = -1.0;
      w.persp = 1.0;
      w.mat.setIdentity();
      break;
    case Family::kHPower:
    case Family::kHGeom:
      w.vec.setOnes();
      break;
    case Family::kRtDet:
      w.mat.setIdentity();
      break;
    case Family::kRPower:
    case Family::kRGeom:
      w.vec.setOnes();
      break;
    case Family::kLInf:
    case Family::kLSpec:
      w.head[0] = 1.0;
      break;
  }
  return w;
}

}  // namespace

std::string_view newton_status_name(NewtonStatus status) {
  switch (status) {
    case NewtonStatus::kConverged:
      return "converged";
    case NewtonStatus::kStalled:
      return "stalled";
    case NewtonStatus::kIterationCap:
      return "iteration_cap";
    case NewtonStatus::kLeftInterior:
      return "left_interior";
  }
  return "unknown";
}

double local_norm_lambda(const ConeDescriptor& cone, const ConePoint& w, const ConePoint& r) {
  check_shape(cone, r);
  const BarrierWorkspace ws(cone, w);
  const ConePoint grad = ws.gradient() + r;
  return std::sqrt(std::max(dot(cone, grad, ws.inverse_hessian_apply(grad)), 0.0));
}

double local_norm_lambda_simplified(const ConeDescriptor& cone, const ConePoint& w,
                                    const ConePoint& r) {
  check_shape(cone, r);
  const BarrierWorkspace ws(cone, w);
  const double rad =
      cone.nu() - 2.0 * dot(cone, w, r) + dot(cone, r, ws.inverse_hessian_apply(r));
  return std::sqrt(std::max(rad, 0.0));
}

ConePoint default_initial_point(const ConeDescriptor& cone, const ConePoint& r) {
  const ConePoint wc = canonical_point(cone);
  return (cone.nu() / dot(cone, wc, r)) * wc;
}

std::pair<ConjugateResult, NewtonTrace> generic_conjugate_gradient(
    const ConeDescriptor& cone, const ConePoint& r, const NewtonOptions& options,
    const std::optional<ConePoint>& w0) {
  check_shape(cone, r);
  if (!(options.eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (options.max_iterations < 0 || options.max_backtracks < 0) {
    throw InvalidArgument("iteration limits must be non-negative");
  }
  if (!dual_in_interior(cone, r)) {
    throw NotInteriorError("generic conjugate gradient requested outside the dual interior of " +
                           cone.to_string());
  }
  ConePoint start = w0 ? *w0 : default_initial_point(cone, r);
  check_shape(cone, start);
  if (!in_interior(cone, start)) throw NotInteriorError("initial point is not interior");

  NewtonTrace trace;
  std::optional<NewtonPoint> cur = evaluate(cone, start, r);
  ConePoint result_w = start;
  if (!cur) {
    trace.status = NewtonStatus::kLeftInterior;
  } else {
    trace.lambdas.push_back(cur->lambda);
    NewtonPoint best = *cur;
    trace.status = NewtonStatus::kIterationCap;
    while (true) {
      if (cur->lambda <= options.eps) {
        trace.status = NewtonStatus::kConverged;
        break;
      }
      if (trace.iterations >= options.max_iterations) break;
      double step = cur->lambda > kQuadraticRegion ? 1.0 / (1.0 + cur->lambda) : 1.0;
      std::optional<NewtonPoint> next;
      for (int k = 0; k <= options.max_backtracks && !next; ++k, step *= 0.5) {
        next = evaluate(cone, cur->w - step * cur->direction, r);
      }
      if (!next) {
        trace.status = NewtonStatus::kLeftInterior;
        break;
      }
      const double prev = cur->lambda;
      cur = std::move(next);
      ++trace.iterations;
      trace.lambdas.push_back(cur->lambda);
      if (cur->lambda < best.lambda) best = *cur;
      const double ratio = prev / (1.0 - prev);
      const bool slow = cur->lambda > kQuadraticRegion && cur->lambda > 1000.0 * ratio * ratio;
      // An increase under full steps marks the rounding floor of lambda.
      const bool floor = prev <= kQuadraticRegion && cur->lambda >= prev;
      if (slow || floor) {
        trace.status = NewtonStatus::kStalled;
        cur = best;
        break;
      }
    }
    result_w = cur->w;
  }

  ConjugateResult out;
  out.g_star = -result_w;
  out.iterations = trace.iterations;
  out.residual = residual(cone, out.g_star, r);
  out.converged = trace.status == NewtonStatus::kConverged;
  return {std::move(out), std::move(trace)};
}

}  // namespace conjbar
