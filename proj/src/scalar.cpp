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

#include "conjbar/scalar.hpp"

#include <cmath>

namespace conjbar {

double wright_omega(double beta) {
  if (!std::isfinite(beta)) throw DomainError("wright_omega: non-finite argument");
  if (beta < -40.0) return std::exp(beta);

  double w;
  if (beta <= -2.0) {
    w = std::exp(beta);
  } else if (beta <= 1.0) {
    const double t = beta - 1.0;
    w = 1.0 + t / 2.0 + t * t / 16.0 - t * t * t / 192.0;
  } else {
    const double lb = std::log(beta);
    w = beta - lb + lb / beta;
  }

  // Fritsch-Shafer-Crowley iteration; each step is fourth order.
  for (int k = 0; k < 4; ++k) {
    const double z = beta - w - std::log(w);
    if (z == 0.0) break;
    const double q = 2.0 * (1.0 + w) * (1.0 + w + 2.0 * z / 3.0);
    w *= 1.0 + (z / (1.0 + w)) * (q - z) / (q - 2.0 * z);
    if (std::abs(z) <= kEps * (1.0 + std::abs(beta))) break;
  }
  return w;
}

DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  const DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
  const double q1 = a.hi / b.hi;
  DoubleDouble r = a - q1 * b;
  const double q2 = r.hi / b.hi;
  r = r - q2 * b;
  const double q3 = r.hi / b.hi;
  return quick_two_sum(q1, q2) + DoubleDouble(q3);
}

DoubleDouble sqrt(const DoubleDouble& a) {
  if (a.hi == 0.0) return {};
  if (a.hi < 0.0) return {std::nan(""), std::nan("")};
  const double x = 1.0 / std::sqrt(a.hi);
  const double ax = a.hi * x;
  return two_sum(ax, (a - two_prod(ax, ax)).hi * (x * 0.5));
}

DoubleDouble abs(const DoubleDouble& a) { return a.hi < 0.0 ? -a : a; }

}  // namespace conjbar
