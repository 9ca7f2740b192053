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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "conjbar/cone.hpp"
#include "conjbar/scalar.hpp"

namespace conjbar {

enum class OutputFormat { kCsv, kMarkdown };

struct ExperimentConfig {
  std::vector<Family> cones;
  std::vector<int> dims;
  std::vector<double> offsets;
  int trials = 10;
  std::uint64_t seed = 42;
  double eps = 1000.0 * kEps;
  OutputFormat format = OutputFormat::kCsv;
  int rpower_d1 = 1;  // length of the p block for rpower/rgeom samples
  int threads = 1;

  /// The benchmark grid: log, hpower, hgeom, rpower, rgeom, linf at
  /// d in {20, 40, 60}, o in {1e-5, ..., 1e-1}, 10 trials, seed 42.
  static ExperimentConfig table_defaults();

  /// Throws InvalidArgument on an empty list, a non-positive dimension or
  /// trial count, an offset outside (0, 1) or a non-positive eps.
  void validate() const;
};

struct IterationStats {
  Family cone = Family::kLog;
  int d = 0;
  double offset = 0.0;
  int trials = 0;
  double mean_generic = 0.0;
  double mean_specialized = 0.0;
  double mean_residual_generic = 0.0;
  double mean_residual_specialized = 0.0;
  int failures = 0;
};

/// Random stream for one (seed, cone, d, o, trial) tuple. Streams of
/// different tuples are independent, so any subset of the grid reproduces the
/// same samples.
class SplitRng {
 public:
  SplitRng(std::uint64_t seed, Family family, int d, double offset, int trial);

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform();
  /// Standard normal by Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Cone of the given family and size. Power weights for hpower/rpower are
/// uniform draws normalized to the simplex; matrix families use d x d blocks.
ConeDescriptor sample_cone(Family family, int d, SplitRng& rng, int rpower_d1 = 1);

/// Dual interior point at relative offset o from the boundary:
///   log:          p = -U(0,1), qbar = p sum log(-r/p) + p d, q = qbar (1 + sgn(qbar) o)
///   hpower/hgeom: p = -(1 - o) prod (r/alpha)^alpha
///   rpower/rgeom: p = (1 - o) prod (r/alpha)^alpha times a uniform unit direction
///   linf:         p = (1 + o) |r|_1
/// with r ~ U(0,1). Matrix cones use the same rule on the spectrum of a
/// randomly rotated diagonal block.
ConePoint sample_dual_point(const ConeDescriptor& cone, double offset, SplitRng& rng);

/// One cell of the grid.
IterationStats run_cell(const ExperimentConfig& config, Family family, int d, double offset);

/// All cells, ordered by d, then o, then cone. A trial that fails in either
/// method counts toward `failures` and is excluded from the means.
std::vector<IterationStats> run_grid(const ExperimentConfig& config);

std::string render_table(const std::vector<IterationStats>& stats, OutputFormat format);

}  // namespace conjbar
