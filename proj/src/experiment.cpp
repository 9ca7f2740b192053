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

#include "conjbar/experiment.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

#include "conjbar/conjugate.hpp"
#include "conjbar/errors.hpp"
#include "conjbar/generic_newton.hpp"

namespace conjbar {

namespace {

using Eigen::ArrayXd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

ArrayXd uniform_vector(SplitRng& rng, int n) {
  ArrayXd x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.uniform();
  return x;
}

MatrixXd random_orthogonal(SplitRng& rng, int n) {
  MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<MatrixXd> qr(g);
  MatrixXd q = qr.householderQ();
  // Column signs follow the diagonal of R.
  const VectorXd diag = qr.matrixQR().diagonal();
  for (int j = 0; j < n; ++j) {
    if (diag[j] < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

// prod (r/alpha)^alpha
double weighted_geomean(const ArrayXd& alpha, const ArrayXd& r) {
  return std::exp((alpha * (r / alpha).log()).sum());
}

double log_q(double p, const ArrayXd& r, double offset) {
  const double d = static_cast<double>(r.size());
  const double qbar = p * (r / -p).log().sum() + p * d;
  const double sgn = qbar > 0.0 ? 1.0 : -1.0;
  return qbar * (1.0 + sgn * offset);
}

std::string format_mean(double x, const char* fmt) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::table_defaults() {
  ExperimentConfig c;
  c.cones = {Family::kLog,    Family::kHPower, Family::kHGeom,
             Family::kRPower, Family::kRGeom,  Family::kLInf};
  c.dims = {20, 40, 60};
  c.offsets = {1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
  return c;
}

void ExperimentConfig::validate() const {
  if (cones.empty()) throw InvalidArgument("no cones selected");
  if (dims.empty()) throw InvalidArgument("no dimensions selected");
  if (offsets.empty()) throw InvalidArgument("no offsets selected");
  for (int d : dims) {
    if (d < 1) throw InvalidArgument("dimensions must be positive");
  }
  for (double o : offsets) {
    if (!(o > 0.0 && o < 1.0)) throw InvalidArgument("offsets must lie in (0, 1)");
  }
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (rpower_d1 < 1) throw InvalidArgument("rpower d1 must be positive");
  if (threads < 1) throw InvalidArgument("threads must be at least 1");
}

SplitRng::SplitRng(std::uint64_t seed, Family family, int d, double offset, int trial) {
  const auto obits = std::bit_cast<std::uint64_t>(offset);
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(family),
                    static_cast<std::uint32_t>(d),
                    static_cast<std::uint32_t>(obits),
                    static_cast<std::uint32_t>(obits >> 32),
                    static_cast<std::uint32_t>(trial)};
  engine_.seed(seq);
}

double SplitRng::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double SplitRng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ConeDescriptor sample_cone(Family family, int d, SplitRng& rng, int rpower_d1) {
  auto random_powers = [&] {
    const ArrayXd a = uniform_vector(rng, d);
    VectorXd alpha = (a / a.sum()).matrix();
    // Absorb the rounding of the normalization into the largest weight.
    Eigen::Index imax;
    alpha.maxCoeff(&imax);
    alpha[imax] += 1.0 - alpha.sum();
    return PowerParams(alpha);
  };
  switch (family) {
    case Family::kLog:
      return ConeDescriptor::log(d);
    case Family::kLogDet:
      return ConeDescriptor::logdet(d);
    case Family::kHPower:
      return ConeDescriptor::hpower(random_powers());
    case Family::kHGeom:
      return ConeDescriptor::hgeom(d);
    case Family::kRtDet:
      return ConeDescriptor::rtdet(d);
    case Family::kRPower:
      return ConeDescriptor::rpower(rpower_d1, random_powers());
    case Family::kRGeom:
      return ConeDescriptor::rgeom(d);
    case Family::kLInf:
      return ConeDescriptor::linf(d);
    case Family::kLSpec:
      return ConeDescriptor::lspec(d, d);
  }
  throw InvalidArgument("unknown cone family");
}

ConePoint sample_dual_point(const ConeDescriptor& cone, double offset, SplitRng& rng) {
  if (!(offset > 0.0 && offset < 1.0)) throw InvalidArgument("offset must lie in (0, 1)");
  ConePoint r = zero_point(cone);
  const int d = cone.dim();
  const ArrayXd alpha = cone.alpha().array();
  for (int attempt = 0; attempt < 100; ++attempt) {
    const ArrayXd s = uniform_vector(rng, d);
    switch (cone.family()) {
      case Family::kLog: {
        r.vec = s.matrix();
        r.head[0] = -rng.uniform();
        r.persp = log_q(r.head[0], s, offset);
        break;
      }
      case Family::kLogDet: {
        const MatrixXd q = random_orthogonal(rng, d);
        r.mat = q * s.matrix().asDiagonal() * q.transpose();
        r.mat = 0.5 * (r.mat + r.mat.transpose());
        r.head[0] = -rng.uniform();
        r.persp = log_q(r.head[0], s, offset);
        break;
      }
      case Family::kHPower:
      case Family::kHGeom:
        r.vec = s.matrix();
        r.head[0] = -(1.0 - offset) * weighted_geomean(alpha, s);
        break;
      case Family::kRtDet: {
        const MatrixXd q = random_orthogonal(rng, d);
        r.mat = q * s.matrix().asDiagonal() * q.transpose();
        r.mat = 0.5 * (r.mat + r.mat.transpose());
        r.head[0] = -(1.0 - offset) * weighted_geomean(alpha, s);
        break;
      }
      case Family::kRPower:
      case Family::kRGeom: {
        r.vec = s.matrix();
        VectorXd dir(cone.head_size());
        for (Eigen::Index i = 0; i < dir.size(); ++i) dir[i] = rng.normal();
        r.head = (1.0 - offset) * weighted_geomean(alpha, s) * dir.normalized();
        break;
      }
      case Family::kLInf:
        r.vec = s.matrix();
        r.head[0] = (1.0 + offset) * s.sum();
        break;
      case Family::kLSpec: {
        const MatrixXd q1 = random_orthogonal(rng, d);
        const MatrixXd q2 = random_orthogonal(rng, cone.mat_cols());
        r.mat = q1 * s.matrix().asDiagonal() * q2.leftCols(d).transpose();
        r.head[0] = (1.0 + offset) * s.sum();
        break;
      }
    }
    if (dual_in_interior(cone, r)) return r;
  }
  throw Error("could not sample an interior dual point for " + cone.to_string());
}

IterationStats run_cell(const ExperimentConfig& config, Family family, int d, double offset) {
  IterationStats st;
  st.cone = family;
  st.d = d;
  st.offset = offset;
  st.trials = config.trials;
  double sum_g = 0.0, sum_s = 0.0, sum_rg = 0.0, sum_rs = 0.0;
  int ok = 0;
  NewtonOptions options;
  options.eps = config.eps;
  for (int t = 0; t < config.trials; ++t) {
    try {
      SplitRng rng(config.seed, family, d, offset, t);
      const ConeDescriptor cone = sample_cone(family, d, rng, config.rpower_d1);
      const ConePoint r = sample_dual_point(cone, offset, rng);
      const ConjugateResult spec = conjugate_gradient(cone, r);
      const auto [gen, trace] = generic_conjugate_gradient(cone, r, options);
      const bool gen_ok =
          trace.status == NewtonStatus::kConverged || trace.status == NewtonStatus::kStalled;
      if (!spec.converged || !gen_ok) {
        ++st.failures;
        continue;
      }
      ++ok;
      sum_g += gen.iterations;
      sum_s += spec.iterations;
      sum_rg += gen.residual;
      sum_rs += spec.residual;
    } catch (const Error&) {
      ++st.failures;
    }
  }
  const double n = ok > 0 ? ok : std::nan("");
  st.mean_generic = sum_g / n;
  st.mean_specialized = sum_s / n;
  st.mean_residual_generic = sum_rg / n;
  st.mean_residual_specialized = sum_rs / n;
  return st;
}

std::vector<IterationStats> run_grid(const ExperimentConfig& config) {
  config.validate();
  struct Key {
    Family family;
    int d;
    double offset;
  };
  std::vector<Key> keys;
  for (int d : config.dims) {
    for (double o : config.offsets) {
      for (Family f : config.cones) keys.push_back({f, d, o});
    }
  }
  std::vector<IterationStats> out(keys.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < keys.size(); i = next++) {
      out[i] = run_cell(config, keys[i].family, keys[i].d, keys[i].offset);
    }
  };
  const int nthreads = std::min<int>(config.threads, static_cast<int>(keys.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

std::string render_table(const std::vector<IterationStats>& stats, OutputFormat format) {
  std::string out;
  char buf[256];
  if (format == OutputFormat::kCsv) {
    out +=
        "cone,d,o,trials,mean_iters_generic,mean_iters_specialized,mean_residual_generic,"
        "mean_residual_specialized,failures\n";
    for (const auto& s : stats) {
      std::snprintf(buf, sizeof buf, "%s,%d,%g,%d,", std::string(family_name(s.cone)).c_str(),
                    s.d, s.offset, s.trials);
      out += buf;
      out += format_mean(s.mean_generic, "%.1f") + ",";
      out += format_mean(s.mean_specialized, "%.1f") + ",";
      out += format_mean(s.mean_residual_generic, "%.1e") + ",";
      out += format_mean(s.mean_residual_specialized, "%.1e") + ",";
      out += std::to_string(s.failures) + "\n";
    }
    return out;
  }

  // Markdown: rows keyed by (d, o) in first-seen order, a g/s column pair per cone.
  std::vector<Family> cones;
  std::vector<std::pair<int, double>> rows;
  for (const auto& s : stats) {
    if (std::find(cones.begin(), cones.end(), s.cone) == cones.end()) cones.push_back(s.cone);
    const std::pair<int, double> key{s.d, s.offset};
    if (std::find(rows.begin(), rows.end(), key) == rows.end()) rows.push_back(key);
  }
  out += "| d | o |";
  for (Family f : cones) {
    const std::string name(family_name(f));
    out += " " + name + " g | " + name + " s |";
  }
  out += "\n|---:|---:|";
  for (std::size_t i = 0; i < cones.size(); ++i) out += "---:|---:|";
  out += "\n";
  for (const auto& [d, o] : rows) {
    std::snprintf(buf, sizeof buf, "| %d | %g |", d, o);
    out += buf;
    for (Family f : cones) {
      const auto it = std::find_if(stats.begin(), stats.end(), [&](const IterationStats& s) {
        return s.cone == f && s.d == d && s.offset == o;
      });
      if (it == stats.end()) {
        out += "  |  |";
      } else {
        out += " " + format_mean(it->mean_generic, "%.1f") + " | " +
               format_mean(it->mean_specialized, "%.1f") + " |";
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace conjbar
