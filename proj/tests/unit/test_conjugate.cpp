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

#include <cmath>

#include "conjbar/barrier.hpp"
#include "conjbar/conjugate.hpp"
#include "conjbar/errors.hpp"
#include "conjbar/experiment.hpp"
#include "conjbar/scalar.hpp"
#include "doctest.h"
#include "support/sampling.hpp"

using namespace conjbar;
using conjbar::testing::TestRng;

namespace {

ConePoint make(const ConeDescriptor& cone, std::initializer_list<double> head, double persp,
               std::initializer_list<double> vec) {
  ConePoint x = zero_point(cone);
  int i = 0;
  for (double h : head) x.head[i++] = h;
  x.persp = persp;
  i = 0;
  for (double v : vec) x.vec[i++] = v;
  return x;
}

constexpr double kOffsets[] = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};

ConePoint sample(const ConeDescriptor& cone, double o, int trial) {
  SplitRng rng(1234, cone.family(), cone.dim(), o, trial);
  return sample_dual_point(cone, o, rng);
}

}  // namespace

TEST_CASE("hgeom conjugate gradient example") {
  const auto cone = ConeDescriptor::hgeom(2);
  const ConePoint r = make(cone, {-1.0}, 0.0, {1.0, 1.0});
  const ConjugateResult c = conjugate_gradient(cone, r);
  CHECK(c.converged);
  CHECK(c.iterations == 0);
  CHECK(c.g_star.head[0] == doctest::Approx(-1.0));
  CHECK(c.g_star.vec[0] == doctest::Approx(-2.0));
  CHECK(c.g_star.vec[1] == doctest::Approx(-2.0));
  CHECK(residual(cone, c.g_star, r) <= 1e-14);
}

TEST_CASE("linf conjugate gradient example") {
  const auto cone = ConeDescriptor::linf(1);
  const ConjugateResult c = conjugate_gradient(cone, make(cone, {2.0}, 0.0, {1.0}));
  CHECK(c.converged);
  CHECK(c.g_star.head[0] == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
  CHECK(c.g_star.vec[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(c.residual <= 1e-14);
  const ConjugateResult z = conjugate_gradient(cone, make(cone, {2.0}, 0.0, {0.0}));
  CHECK(z.g_star.head[0] == doctest::Approx(-1.0));
  CHECK(z.g_star.vec[0] == 0.0);
}

TEST_CASE("log conjugate gradient example") {
  const auto cone = ConeDescriptor::log(1);
  const ConePoint r = make(cone, {-1.0}, 0.0, {1.0});
  const ConjugateResult c = conjugate_gradient(cone, r);
  CHECK(c.converged);
  CHECK(c.g_star.head[0] == doctest::Approx(0.20513703814738887).epsilon(1e-13));
  CHECK(c.g_star.persp == doctest::Approx(-1.7948629618526111).epsilon(1e-13));
  CHECK(c.g_star.vec[0] == doctest::Approx(-2.7948629618526111).epsilon(1e-13));
  CHECK(dot(cone, c.g_star, r) == doctest::Approx(-3.0).epsilon(1e-14));
}

TEST_CASE("rpower conjugate gradient at p = 0") {
  const auto cone = ConeDescriptor::rpower(1, PowerParams(Eigen::Vector2d(0.5, 0.5)));
  const ConjugateResult c = conjugate_gradient(cone, make(cone, {0.0}, 0.0, {0.5, 0.5}));
  CHECK(c.converged);
  CHECK(c.g_star.head[0] == 0.0);
  CHECK(c.g_star.vec[0] == doctest::Approx(-3.0));
  CHECK(c.g_star.vec[1] == doctest::Approx(-3.0));
}

TEST_CASE("rgeom conjugate gradient example") {
  const auto cone = ConeDescriptor::rgeom(2);
  const ConePoint r = make(cone, {0.5}, 0.0, {0.5, 0.5});
  const ConjugateResult c = conjugate_gradient(cone, r);
  CHECK(c.converged);
  CHECK(c.g_star.head[0] == doctest::Approx(2.8610018).epsilon(1e-7));
  CHECK(c.g_star.vec[0] == doctest::Approx(-4.4305009).epsilon(1e-7));
  CHECK(c.g_star.vec[1] == doctest::Approx(-4.4305009).epsilon(1e-7));
  CHECK(dot(cone, c.g_star, r) == doctest::Approx(-3.0).epsilon(1e-13));
}

TEST_CASE("non-interior dual points are rejected") {
  const auto cone = ConeDescriptor::linf(2);
  CHECK_THROWS_AS(conjugate_gradient(cone, make(cone, {2.0}, 0.0, {1.0, 1.0})), NotInteriorError);
  CHECK_THROWS_AS(conjugate_value(cone, make(cone, {1.0}, 0.0, {1.0, 1.0})), NotInteriorError);
}

TEST_CASE("residual of a perturbed conjugate gradient") {
  const auto cone = ConeDescriptor::hgeom(2);
  const ConePoint r = make(cone, {-1.0}, 0.0, {1.0, 1.0});
  const ConePoint g = make(cone, {-1.0}, 0.0, {-2.0, -2.0});
  CHECK(residual(cone, g, r) == 0.0);
  const ConePoint dir = make(cone, {0.0}, 0.0, {1.0, 0.0});
  CHECK(residual(cone, g + 1e-3 * dir, r) == doctest::Approx(1e-3));
}

TEST_CASE("conjugate value examples") {
  const auto hgeom = ConeDescriptor::hgeom(2);
  const ConePoint rh = make(hgeom, {-1.0}, 0.0, {1.0, 1.0});
  CHECK(conjugate_value(hgeom, rh) == doctest::Approx(-3.0 + 2.0 * std::log(2.0)));
  CHECK(conjugate_value_via_gradient(hgeom, rh) ==
        doctest::Approx(-3.0 + 2.0 * std::log(2.0)).epsilon(1e-12));
  const auto log = ConeDescriptor::log(1);
  const ConePoint rl = make(log, {-1.0}, 0.0, {1.0});
  const double w = 1.0 * wright_omega(2.0);
  const double expected = -3.0 - std::log((w - 1.0) * (w - 1.0) / w);
  CHECK(conjugate_value(log, rl) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(conjugate_value_via_gradient(log, rl) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("conjugate value computed two ways agrees") {
  for (Family f : kAllFamilies) {
    TestRng rng(200 + static_cast<int>(f));
    for (int k = 0; k < 100; ++k) {
      const auto cone = testing::random_cone(f, rng);
      const ConePoint r = sample(cone, kOffsets[k % 5], k);
      const double a = conjugate_value(cone, r);
      const double b = conjugate_value_via_gradient(cone, r);
      CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("round trips through the primal gradient") {
  for (Family f : kAllFamilies) {
    TestRng rng(300 + static_cast<int>(f));
    for (int k = 0; k < 250; ++k) {
      const auto cone = testing::random_cone(f, rng, 20);
      const double nu = cone.nu();
      const ConePoint r = sample(cone, kOffsets[k % 3], k);
      const ConjugateResult c = conjugate_gradient(cone, r);
      REQUIRE(c.converged);
      CHECK(in_interior(cone, -c.g_star));
      CHECK(c.residual <= 1e-10 * nu);
      const ConePoint back = -barrier_gradient(cone, -c.g_star);
      CHECK(norm(cone, back - r) <= 1e-8 * (1.0 + norm(cone, r)));

      const ConePoint w = testing::random_interior_point(cone, rng);
      const ConePoint s = -barrier_gradient(cone, w);
      const ConjugateResult cw = conjugate_gradient(cone, s);
      CHECK(norm(cone, -cw.g_star - w) <= 1e-8 * (1.0 + norm(cone, w)));
    }
  }
}

TEST_CASE("conjugate gradient is homogeneous of degree minus one") {
  for (Family f : kAllFamilies) {
    TestRng rng(400 + static_cast<int>(f));
    for (int k = 0; k < 50; ++k) {
      const auto cone = testing::random_cone(f, rng);
      const ConePoint r = sample(cone, kOffsets[k % 3], k);
      const double theta = std::pow(10.0, rng.uniform(-3.0, 3.0));
      const ConePoint a = conjugate_gradient(cone, theta * r).g_star;
      const ConePoint b = (1.0 / theta) * conjugate_gradient(cone, r).g_star;
      CHECK(testing::relative_error(cone, a, b) <= 1e-10);
    }
  }
}

TEST_CASE("equal-power cones agree with the general-power code") {
  TestRng rng(500);
  for (int k = 0; k < 200; ++k) {
    const int d = rng.integer(1, 30);
    const double o = kOffsets[k % 5];
    const auto hgeom = ConeDescriptor::hgeom(d);
    const auto hpower = ConeDescriptor::hpower(PowerParams::uniform(d));
    const double tol = o >= 1e-2 ? 1e-12 : 100.0 * kEps / o;
    const ConePoint rh = sample(hgeom, o, k);
    CHECK(testing::relative_error(hgeom, conjugate_gradient(hgeom, rh).g_star,
                                  conjugate_gradient(hpower, rh).g_star) <= tol);
    const auto rgeom = ConeDescriptor::rgeom(d);
    const auto rpower = ConeDescriptor::rpower(1, PowerParams::uniform(d));
    const ConePoint rr = sample(rgeom, o, k);
    CHECK(testing::relative_error(rgeom, conjugate_gradient(rgeom, rr).g_star,
                                  conjugate_gradient(rpower, rr).g_star) <= tol);
  }
}

TEST_CASE("matrix cones with diagonal dual blocks match the vector cones") {
  TestRng rng(600);
  for (int k = 0; k < 100; ++k) {
    const int d = rng.integer(1, 8);
    const double o = kOffsets[k % 2];
    const auto log = ConeDescriptor::log(d);
    const auto logdet = ConeDescriptor::logdet(d);
    const ConePoint r = sample(log, o, k);
    ConePoint rm = zero_point(logdet);
    rm.head = r.head;
    rm.persp = r.persp;
    rm.mat = r.vec.asDiagonal();
    const ConePoint gv = conjugate_gradient(log, r).g_star;
    const ConePoint gm = conjugate_gradient(logdet, rm).g_star;
    CHECK(std::abs(gv.head[0] - gm.head[0]) <= 1e-11 * std::abs(gv.head[0]));
    CHECK(std::abs(gv.persp - gm.persp) <= 1e-11 * std::abs(gv.persp));
    CHECK((gm.mat.diagonal() - gv.vec).norm() <= 1e-11 * gv.vec.norm());
  }
}

TEST_CASE("specialized root-finds converge within ten steps") {
  for (Family f : {Family::kHPower, Family::kRPower, Family::kLInf}) {
    TestRng rng(700 + static_cast<int>(f));
    for (int k = 0; k < 200; ++k) {
      const int d = rng.integer(1, 60);
      SplitRng srng(99, f, d, kOffsets[k % 5], k);
      const auto cone = sample_cone(f, d, srng, 1);
      const ConePoint r = sample_dual_point(cone, kOffsets[k % 5], srng);
      const ConjugateResult c = conjugate_gradient(cone, r);
      CHECK(c.converged);
      CHECK(c.iterations <= 10);
    }
  }
}
