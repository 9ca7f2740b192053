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

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "conjbar/barrier.hpp"
#include "conjbar/conjugate.hpp"
#include "conjbar/experiment.hpp"
#include "conjbar/generic_newton.hpp"
#include "conjbar/scalar.hpp"
#include "support/sampling.hpp"

#ifndef CONJBAR_EXPERIMENT_CLI
#error "CONJBAR_EXPERIMENT_CLI must name the experiment executable"
#endif

using namespace conjbar;
using conjbar::testing::TestRng;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

constexpr double kOffsets[] = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};

int max_dim(Family f) { return is_matrix_family(f) ? 8 : 20; }

ConeDescriptor random_table_cone(Family f, int d, SplitRng& rng, TestRng& trng) {
  const int d1 = f == Family::kRPower ? trng.integer(1, 3) : 1;
  return sample_cone(f, d, rng, d1);
}

// 1: logarithmic homogeneity identities.
Outcome identity_suite() {
  double worst_dot = 0.0, worst_f = 0.0;
  for (Family f : kAllFamilies) {
    TestRng rng(1000 + static_cast<int>(f));
    for (int k = 0; k < 1000; ++k) {
      const auto cone = testing::random_cone(f, rng, max_dim(f));
      const double nu = cone.nu();
      const ConePoint w = testing::random_interior_point(cone, rng);
      const double f0 = barrier_value(cone, w);
      for (double theta : {1e-3, 1.0, 1e3}) {
        const ConePoint tw = theta * w;
        const BarrierWorkspace ws(cone, tw);
        worst_dot = std::max(worst_dot, std::abs(-dot(cone, ws.gradient(), tw) - nu) / nu);
        worst_f = std::max(worst_f, std::abs(ws.value() - f0 + nu * std::log(theta)));
      }
    }
  }
  Outcome o;
  o.pass = worst_dot <= 1e-10 && worst_f <= 1e-9;
  o.detail = "max |<-g,w>-nu|/nu " + fmt("%.1e", worst_dot) + " (tol 1e-10), max |f(tw)-f(w)+nu log t| " +
             fmt("%.1e", worst_f) + " (tol 1e-9), 9x1000 points x 3 scales";
  return o;
}

// 2: conjugate round trips.
Outcome round_trip_suite() {
  double worst_rt = 0.0, worst_res = 0.0, worst_floor = 0.0;
  std::string rt_at, res_at;
  int not_converged = 0;
  for (Family f : kAllFamilies) {
    TestRng trng(2000 + static_cast<int>(f));
    for (double o : kOffsets) {
      for (int k = 0; k < 200; ++k) {
        const int d = trng.integer(1, max_dim(f));
        SplitRng rng(2, f, d, o, k);
        const auto cone = random_table_cone(f, d, rng, trng);
        const ConePoint r = sample_dual_point(cone, o, rng);
        const ConjugateResult c = conjugate_gradient(cone, r);
        if (!c.converged) ++not_converged;
        const ConePoint back = -barrier_gradient(cone, -c.g_star);
        const double scale = 1.0 + norm(cone, r);
        const double rt = norm(cone, back - r) / scale;
        if (rt > worst_rt) {
          Eigen::VectorXd x = to_flat(cone, c.g_star);
          for (Eigen::Index i = 0; i < x.size(); ++i) x[i] *= 1.0 + (i % 2 ? kEps : -kEps);
          const ConePoint nudged = -barrier_gradient(cone, -from_flat(cone, x));
          worst_rt = rt;
          worst_floor = norm(cone, nudged - back) / scale;
          rt_at = std::string(family_name(f)) + " d=" + std::to_string(d) + " o=" + fmt("%.0e", o);
        }
        if (c.residual / cone.nu() > worst_res) {
          worst_res = c.residual / cone.nu();
          res_at = std::string(family_name(f)) + " d=" + std::to_string(d) + " o=" + fmt("%.0e", o);
        }
      }
    }
  }
  Outcome out;
  out.pass = worst_rt <= 1e-8 && worst_res <= 1e-9 && not_converged == 0;
  out.detail = "max ||-g(-g*(r))-r||/(1+||r||) " + fmt("%.1e", worst_rt) + " at " + rt_at +
               " (tol 1e-8; 1-ulp perturbation of g* there gives " + fmt("%.1e", worst_floor) +
               "), max residual/nu " + fmt("%.1e", worst_res) + " at " + res_at +
               " (tol 1e-9), " + std::to_string(not_converged) + " unconverged of 9000";
  return out;
}

// 3: derivative oracles against finite differences.
Outcome derivative_oracles() {
  double worst_g = 0.0, worst_h = 0.0, worst_inv = 0.0;
  for (Family f : kAllFamilies) {
    TestRng rng(3000 + static_cast<int>(f));
    for (int k = 0; k < 100; ++k) {
      const auto cone = testing::random_cone(f, rng, is_matrix_family(f) ? 5 : 10);
      const ConePoint w = testing::random_interior_point(cone, rng);
      const BarrierWorkspace ws(cone, w);
      const int n = cone.flat_size();
      const Eigen::VectorXd g = to_flat(cone, ws.gradient());
      const Eigen::MatrixXd hm = ws.hessian_matrix();
      Eigen::VectorXd gfd(n);
      Eigen::MatrixXd hfd(n, n);
      for (int i = 0; i < n; ++i) {
        const ConePoint e = from_flat(cone, Eigen::VectorXd::Unit(n, i));
        const double h = testing::interior_step(cone, w, e, 1e-6 * (1.0 + norm(cone, w)));
        gfd[i] = testing::directional_derivative_fd(cone, w, e, h);
        hfd.col(i) = testing::gradient_derivative_fd(cone, w, e, h);
      }
      worst_g = std::max(worst_g, testing::relative_error(gfd, g));
      worst_h = std::max(worst_h, (hfd - hm).norm() / hm.norm());
      for (int j = 0; j < 3; ++j) {
        const ConePoint x = testing::random_direction(cone, rng);
        worst_inv = std::max(
            worst_inv,
            testing::relative_error(cone, ws.inverse_hessian_apply(ws.hessian_apply(x)), x));
      }
    }
  }
  Outcome o;
  o.pass = worst_g <= 1e-5 && worst_h <= 1e-5 && worst_inv <= 1e-9;
  o.detail = "max rel err gradient " + fmt("%.1e", worst_g) + ", Hessian " + fmt("%.1e", worst_h) +
             " (tol 1e-5), inverse(H x) vs x " + fmt("%.1e", worst_inv) + " (tol 1e-9)";
  return o;
}

// 4: closed-form inverse Hessians against the dense solve.
Outcome closed_form_inverses() {
  double worst = 0.0;
  int closed = 0;
  for (Family f : {Family::kHPower, Family::kRPower}) {
    TestRng rng(4000 + static_cast<int>(f));
    for (int k = 0; k < 200; ++k) {
      const auto cone = testing::random_cone(f, rng, 30);
      const ConePoint w = testing::random_interior_point(cone, rng);
      const BarrierWorkspace ws(cone, w);
      if (ws.has_closed_form_inverse()) ++closed;
      const ConePoint x = testing::random_direction(cone, rng);
      worst = std::max(worst, testing::relative_error(cone, ws.inverse_hessian_apply(x),
                                                      ws.inverse_hessian_apply_dense(x)));
    }
  }
  Outcome o;
  o.pass = worst <= 1e-10 && closed == 400;
  o.detail = "max rel diff " + fmt("%.1e", worst) + " (tol 1e-10) over 2x200 points, d <= 30";
  return o;
}

ConePoint embed(const ConeDescriptor& m, const ConePoint& x) {
  ConePoint p = zero_point(m);
  p.head = x.head;
  p.persp = x.persp;
  for (Eigen::Index i = 0; i < x.vec.size(); ++i) p.mat(i, i) = x.vec[i];
  return p;
}

double diag_error(const ConeDescriptor& v, const ConePoint& a, const ConePoint& m) {
  double num = (a.head - m.head).squaredNorm() + (a.persp - m.persp) * (a.persp - m.persp);
  Eigen::MatrixXd off = m.mat;
  for (Eigen::Index i = 0; i < a.vec.size(); ++i) {
    num += (a.vec[i] - m.mat(i, i)) * (a.vec[i] - m.mat(i, i));
    off(i, i) = 0.0;
  }
  num += off.squaredNorm();
  return std::sqrt(num) / std::max(norm(v, a), 1e-300);
}

// 5: matrix cones restricted to diagonal inputs.
Outcome matrix_vector_consistency() {
  double worst = 0.0;
  for (Family f : {Family::kLogDet, Family::kRtDet, Family::kLSpec}) {
    TestRng rng(5000 + static_cast<int>(f));
    for (int k = 0; k < 200; ++k) {
      const auto m = testing::random_cone(f, rng, 8);
      const auto v = f == Family::kLogDet  ? ConeDescriptor::log(m.d2())
                     : f == Family::kRtDet ? ConeDescriptor::hgeom(m.d2())
                                           : ConeDescriptor::linf(m.d1());
      const ConePoint x = testing::random_interior_point(v, rng);
      const BarrierWorkspace vw(v, x);
      const BarrierWorkspace mw(m, embed(m, x));
      worst = std::max(worst, std::abs(vw.value() - mw.value()) / (1.0 + std::abs(vw.value())));
      worst = std::max(worst, diag_error(v, vw.gradient(), mw.gradient()));
      const ConePoint dx = testing::random_direction(v, rng);
      worst = std::max(worst, diag_error(v, vw.hessian_apply(dx), mw.hessian_apply(embed(m, dx))));
      worst = std::max(worst, diag_error(v, vw.inverse_hessian_apply(dx),
                                         mw.inverse_hessian_apply(embed(m, dx))));
      const ConePoint r = vw.gradient();
      const ConePoint gv = conjugate_gradient(v, -r).g_star;
      const ConePoint gm = conjugate_gradient(m, embed(m, -r)).g_star;
      worst = std::max(worst, diag_error(v, gv, gm));
    }
  }
  Outcome o;
  o.pass = worst <= 1e-12;
  o.detail = "max rel diff over value, gradient, H, H^-1, g* " + fmt("%.1e", worst) +
             " (tol 1e-12), 3x200 diagonal points";
  return o;
}

// 6: specialized versus generic conjugate gradients.
Outcome specialized_vs_generic() {
  double worst = 0.0;
  int compared = 0, skipped = 0;
  for (Family f : kAllFamilies) {
    TestRng trng(6000 + static_cast<int>(f));
    for (int k = 0; k < 100; ++k) {
      const double o = kOffsets[k % 4];
      const int d = trng.integer(1, max_dim(f));
      SplitRng rng(6, f, d, o, k);
      const auto cone = random_table_cone(f, d, rng, trng);
      const ConePoint r = sample_dual_point(cone, o, rng);
      const ConjugateResult s = conjugate_gradient(cone, r);
      const auto [g, trace] = generic_conjugate_gradient(cone, r);
      const bool ok =
          trace.status == NewtonStatus::kConverged || trace.status == NewtonStatus::kStalled;
      if (!s.converged || !ok) {
        ++skipped;
        continue;
      }
      ++compared;
      worst = std::max(worst, testing::relative_error(cone, g.g_star, s.g_star));
    }
  }
  Outcome out;
  out.pass = worst <= 1e-6 && compared > 0;
  out.detail = "max rel diff " + fmt("%.1e", worst) + " (tol 1e-6), " + std::to_string(compared) +
               " compared, " + std::to_string(skipped) + " skipped (a method did not finish)";
  return out;
}

// Mean iteration counts for d in {20,40,60} x o in {1e-5,...,1e-1}.
struct ReferenceColumn {
  Family cone;
  bool specialized;
  std::array<double, 15> values;
};

const ReferenceColumn kReference[] = {
    {Family::kLog, false, {98, 84, 70, 56, 40, 196, 160, 124, 90, 57, 301, 240, 180, 124, 76}},
    {Family::kHPower, false, {88, 74, 61, 46, 31, 130, 108, 85, 63, 41, 218, 170, 124, 83, 50}},
    {Family::kHPower, true, {2, 2, 3, 3, 4, 2, 2, 3, 3, 4, 2, 2, 3, 3, 4}},
    {Family::kHGeom, false, {27, 27, 27, 27, 25, 37, 37, 37, 37, 33, 46, 46, 46, 45, 40}},
    {Family::kRPower, false, {88, 74, 60, 46, 31, 127, 105, 83, 62, 41, 211, 164, 120, 81, 49}},
    {Family::kRPower, true, {3, 3, 3, 4, 4, 3, 3, 3, 3.4, 4, 3, 3, 3, 3, 4}},
    {Family::kRGeom, false, {27, 27, 27, 26, 24, 37, 37, 37, 36, 33, 45, 45, 45, 44, 39}},
    {Family::kLInf, false, {41, 36, 30, 24, 17, 46, 40, 34, 27, 19, 49, 44, 38, 30, 21}},
    {Family::kLInf, true, {2, 3, 4, 5, 5, 3, 4, 5, 6, 5, 3.1, 4.3, 5.5, 6, 5}},
};

// 7: benchmark table.
Outcome table_reproduction() {
  const ExperimentConfig config = ExperimentConfig::table_defaults();
  const auto stats = run_grid(config);
  std::map<std::tuple<Family, int, double>, const IterationStats*> cell;
  for (const auto& s : stats) cell[{s.cone, s.d, s.offset}] = &s;
  const int dims[] = {20, 40, 60};
  const double offs[] = {1e-5, 1e-4, 1e-3, 1e-2, 1e-1};

  int s_bad = 0, s_total = 0, g_bad = 0, g_total = 0, failures = 0;
  std::map<Family, std::vector<std::string>> g_misses;
  std::ostringstream s_miss;
  for (const auto& col : kReference) {
    for (int i = 0; i < 15; ++i) {
      const IterationStats& s = *cell.at({col.cone, dims[i / 5], offs[i % 5]});
      const double expected = col.values[i];
      if (col.specialized) {
        ++s_total;
        if (!(std::abs(s.mean_specialized - expected) <= 2.0)) {
          ++s_bad;
          s_miss << " " << family_name(col.cone) << "(" << dims[i / 5] << "," << offs[i % 5]
                 << ")=" << s.mean_specialized;
        }
      } else {
        ++g_total;
        failures += s.failures;
        if (!(std::abs(s.mean_generic - expected) <= 0.5 * expected)) {
          ++g_bad;
          g_misses[col.cone].push_back(std::to_string(dims[i / 5]) + "/" + fmt("%g", offs[i % 5]) +
                                       ":" + fmt("%.1f", s.mean_generic) + "vs" +
                                       fmt("%g", expected));
        }
      }
    }
  }

  // Trends: non-increasing in o at fixed d, non-decreasing in d at fixed o;
  // one inversion allowed per cone.
  int trend_bad = 0;
  std::ostringstream trend_miss;
  for (Family f : config.cones) {
    int inversions = 0;
    for (int d : dims) {
      for (int j = 1; j < 5; ++j) {
        if (cell.at({f, d, offs[j]})->mean_generic > cell.at({f, d, offs[j - 1]})->mean_generic) {
          ++inversions;
        }
      }
    }
    for (double o : offs) {
      for (int j = 1; j < 3; ++j) {
        if (cell.at({f, dims[j], o})->mean_generic < cell.at({f, dims[j - 1], o})->mean_generic) {
          ++inversions;
        }
      }
    }
    if (inversions > 1) {
      ++trend_bad;
      trend_miss << " " << family_name(f) << ":" << inversions;
    }
  }

  Outcome out;
  out.pass = s_bad == 0 && g_bad == 0 && trend_bad == 0 && failures == 0;
  std::ostringstream d;
  d << "s cells within +-2: " << (s_total - s_bad) << "/" << s_total << s_miss.str()
    << "; g cells within +-50%: " << (g_total - g_bad) << "/" << g_total;
  for (const auto& [f, misses] : g_misses) {
    d << "; " << family_name(f) << " misses " << misses.size() << " [";
    for (size_t i = 0; i < misses.size(); ++i) d << (i ? " " : "") << misses[i];
    d << "]";
  }
  d << "; trends " << (trend_bad == 0 ? "ok" : "violated" + trend_miss.str())
    << "; trial failures " << failures;
  out.detail = d.str();
  return out;
}

// 8: Wright omega.
Outcome wright_omega_check() {
  double worst = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double beta = -30.0 + 80.0 * i / (n - 1);
    const double w = wright_omega(beta);
    worst = std::max(worst, std::abs(w + std::log(w) - beta) / (kEps * (1.0 + std::abs(beta))));
  }
  auto ulps = [](double a, double b) { return std::abs(a - b) / (std::nextafter(b, INFINITY) - b); };
  const double u1 = ulps(wright_omega(1.0), 1.0);
  const double ue = ulps(wright_omega(1.0 + std::numbers::e), std::numbers::e);
  Outcome o;
  o.pass = worst <= 8.0 && u1 <= 2.0 && ue <= 2.0;
  o.detail = "max |w+log w-b|/(eps(1+|b|)) " + fmt("%.2f", worst) + " (tol 8) on 1e5 points; w(1) " +
             fmt("%.0f", u1) + " ulp, w(1+e) " + fmt("%.0f", ue) + " ulp (tol 2)";
  return o;
}

std::string run_command(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) {
    status = -1;
    return out;
  }
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  status = pclose(p);
  return out;
}

// 9: CLI determinism.
Outcome cli_determinism() {
  const std::string cmd = std::string("\"") + CONJBAR_EXPERIMENT_CLI + "\" --seed 42 --format csv";
  int s1 = 0, s2 = 0;
  const std::string a = run_command(cmd, s1);
  const std::string b = run_command(cmd, s2);
  const int rows = static_cast<int>(std::count(a.begin(), a.end(), '\n')) - 1;
  Outcome o;
  o.pass = s1 == 0 && s2 == 0 && !a.empty() && a == b && rows == 90;
  o.detail = std::to_string(a.size()) + " bytes, " + std::to_string(rows) + " rows, runs " +
             (a == b ? "identical" : "differ") + ", exit codes " + std::to_string(s1) + "/" +
             std::to_string(s2);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "identity suite", 30.0, identity_suite},
      {2, "round-trip suite", 60.0, round_trip_suite},
      {3, "derivative oracles", 0.0, derivative_oracles},
      {4, "closed-form inverse Hessians", 0.0, closed_form_inverses},
      {5, "matrix/vector consistency", 0.0, matrix_vector_consistency},
      {6, "specialized vs generic", 0.0, specialized_vs_generic},
      {7, "benchmark table", 300.0, table_reproduction},
      {8, "Wright omega", 0.0, wright_omega_check},
      {9, "CLI determinism", 0.0, cli_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = fmt("%.2f s", secs);
    if (c.time_limit > 0.0) {
      timing += " (limit " + fmt("%.0f s", c.time_limit) + ")";
      if (secs > c.time_limit) o.pass = false;
    }
    if (!o.pass) ++failed;
    std::printf("%s  %d  %-30s %s [%s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
