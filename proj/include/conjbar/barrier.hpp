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

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <memory>
#include <optional>

#include "conjbar/cone.hpp"

namespace conjbar {

namespace detail {
class BarrierImpl;
}

/// Primal barrier oracles at one interior point.
///
/// The workspace caches everything derived from the point (the slack zeta,
/// the power function, eigen/singular decompositions, the gradient and, on
/// first use, the Cholesky factor of the assembled Hessian), so gradient,
/// Hessian and inverse-Hessian calls at the same point share that work. A
/// workspace is tied to the point it was built for and is not thread-safe.
///
/// Hessians are analytic. The inverse Hessian uses closed forms for the
/// hypograph power cone and the radial power family, and a dense Cholesky
/// solve of the assembled Hessian for every other family.
class BarrierWorkspace {
 public:
  /// Throws ShapeError for a malformed point and NotInteriorError unless
  /// in_interior(cone, w).
  BarrierWorkspace(ConeDescriptor cone, ConePoint w);
  ~BarrierWorkspace();
  BarrierWorkspace(BarrierWorkspace&&) noexcept;
  BarrierWorkspace& operator=(BarrierWorkspace&&) noexcept;

  const ConeDescriptor& cone() const { return cone_; }
  const ConePoint& point() const { return point_; }

  double value() const;
  const ConePoint& gradient() const;
  ConePoint hessian_apply(const ConePoint& x) const;
  ConePoint inverse_hessian_apply(const ConePoint& x) const;

  /// True when inverse_hessian_apply uses a closed form.
  bool has_closed_form_inverse() const;

  /// Dense Hessian in `to_flat` coordinates, assembled column by column from
  /// hessian_apply.
  Eigen::MatrixXd hessian_matrix() const;

  /// Inverse Hessian via Cholesky of hessian_matrix(), for every family.
  /// Throws NotPositiveDefinite on a bad pivot.
  ConePoint inverse_hessian_apply_dense(const ConePoint& x) const;

 private:
  ConeDescriptor cone_;
  ConePoint point_;
  std::unique_ptr<detail::BarrierImpl> impl_;
  mutable std::optional<ConePoint> gradient_;
  mutable std::optional<Eigen::LLT<Eigen::MatrixXd>> factor_;
};

double barrier_value(const ConeDescriptor& cone, const ConePoint& w);
ConePoint barrier_gradient(const ConeDescriptor& cone, const ConePoint& w);
ConePoint hessian_apply(const ConeDescriptor& cone, const ConePoint& w, const ConePoint& x);
ConePoint inverse_hessian_apply(const ConeDescriptor& cone, const ConePoint& w,
                                const ConePoint& x);

}  // namespace conjbar
