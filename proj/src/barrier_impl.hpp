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

#include <memory>

#include "conjbar/cone.hpp"

namespace conjbar::detail {

class BarrierImpl {
 public:
  virtual ~BarrierImpl() = default;
  virtual double value() const = 0;
  virtual ConePoint gradient() const = 0;
  virtual ConePoint hessian_apply(const ConePoint& x) const = 0;
  virtual bool has_closed_form_inverse() const { return false; }
  virtual ConePoint inverse_hessian_apply(const ConePoint& x) const;
};

// Both assume an interior point of the right shape.
std::unique_ptr<BarrierImpl> make_vector_barrier(const ConeDescriptor& cone, const ConePoint& w);
std::unique_ptr<BarrierImpl> make_matrix_barrier(const ConeDescriptor& cone, const ConePoint& w);

}  // namespace conjbar::detail
