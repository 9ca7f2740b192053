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

#include <Eigen/Core>
#include <optional>
#include <string>
#include <string_view>

namespace conjbar {

/// The nine supported cone families. Log/LogDet are the (log-determinant)
/// logarithm cones, HPower/HGeom/RtDet the hypograph power-mean family,
/// RPower/RGeom the radial power family and LInf/LSpec the epigraphs of the
/// infinity and spectral norms.
enum class Family {
  kLog,
  kLogDet,
  kHPower,
  kHGeom,
  kRtDet,
  kRPower,
  kRGeom,
  kLInf,
  kLSpec,
};

inline constexpr Family kAllFamilies[] = {
    Family::kLog,    Family::kLogDet, Family::kHPower,
    Family::kHGeom,  Family::kRtDet,  Family::kRPower,
    Family::kRGeom,  Family::kLInf,   Family::kLSpec,
};

/// Lowercase short name ("log", "logdet", "hpower", ...).
std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);
bool is_matrix_family(Family family);

/// Positive weights on the unit simplex. Construction validates and never
/// renormalizes.
class PowerParams {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Throws InvalidArgument unless every weight is positive and the weights
  /// sum to one within kSumTolerance.
  explicit PowerParams(Eigen::VectorXd alpha);

  /// Equal weights e/d.
  static PowerParams uniform(int d);

  const Eigen::VectorXd& alpha() const { return alpha_; }
  int size() const { return static_cast<int>(alpha_.size()); }

 private:
  Eigen::VectorXd alpha_;
};

/// Identifies a cone (family plus dimensions and powers) and fixes the block
/// layout of its points.
///
/// Dimensions follow the usual conventions: `dim()` is d for the logarithm,
/// hypograph and infinity-norm families, d2 for the radial families and d1
/// (the number of singular values) for the spectral norm cone.
class ConeDescriptor {
 public:
  static ConeDescriptor log(int d);
  static ConeDescriptor logdet(int d);
  static ConeDescriptor hpower(PowerParams powers);
  static ConeDescriptor hgeom(int d);
  static ConeDescriptor rtdet(int d);
  static ConeDescriptor rpower(int d1, PowerParams powers);
  static ConeDescriptor rgeom(int d2);
  static ConeDescriptor linf(int d);
  static ConeDescriptor lspec(int d1, int d2);

  Family family() const { return family_; }
  int d1() const { return d1_; }
  int d2() const { return d2_; }
  int dim() const;

  /// Barrier parameter nu.
  double nu() const;

  /// Power weights. Equal weights for HGeom, RGeom and RtDet; empty for the
  /// remaining families.
  const Eigen::VectorXd& alpha() const { return alpha_; }

  bool is_matrix() const { return is_matrix_family(family_); }
  bool has_persp() const;
  int head_size() const;
  int vec_size() const;
  int mat_rows() const;
  int mat_cols() const;
  bool symmetric_matrix() const;

  /// Number of real coordinates of the cone's ambient space (symmetric
  /// matrix blocks count d(d+1)/2).
  int flat_size() const;

  std::string to_string() const;

 private:
  ConeDescriptor(Family family, int d1, int d2, Eigen::VectorXd alpha);

  Family family_;
  int d1_;
  int d2_;
  Eigen::VectorXd alpha_;
};

/// A point in a cone's ambient space, primal or dual.
///
/// Blocks are positional. For a primal point of the logarithm cones `head`
/// holds u, `persp` v, and `vec`/`mat` the w/W block; the paired dual point
/// stores p, q and r/R in the same slots so that the inner product is the
/// blockwise one. `head` has d1 entries for the radial power cones and one
/// entry otherwise. Unused blocks are empty (persp is ignored).
struct ConePoint {
  Eigen::VectorXd head;
  double persp = 0.0;
  Eigen::VectorXd vec;
  Eigen::MatrixXd mat;
};

/// All-zero point with the layout of `cone`.
ConePoint zero_point(const ConeDescriptor& cone);

/// Throws ShapeError if `x` does not have the layout of `cone`.
void check_shape(const ConeDescriptor& cone, const ConePoint& x);
bool has_shape(const ConeDescriptor& cone, const ConePoint& x);

/// Blockwise Euclidean / Frobenius inner product.
double dot(const ConeDescriptor& cone, const ConePoint& a, const ConePoint& b);
double norm(const ConeDescriptor& cone, const ConePoint& a);

ConePoint operator+(const ConePoint& a, const ConePoint& b);
ConePoint operator-(const ConePoint& a, const ConePoint& b);
ConePoint operator-(const ConePoint& a);
ConePoint operator*(double s, const ConePoint& a);

/// Coordinates in an orthonormal basis of the ambient space. Symmetric
/// matrix blocks use the scaled lower-triangle vectorization (off-diagonal
/// entries times sqrt(2)), so `dot` is preserved.
Eigen::VectorXd to_flat(const ConeDescriptor& cone, const ConePoint& x);
ConePoint from_flat(const ConeDescriptor& cone, const Eigen::VectorXd& flat);

/// Strict membership in the interior of the cone. Exact comparisons, no
/// tolerance: boundary points are not interior.
bool in_interior(const ConeDescriptor& cone, const ConePoint& w);

/// Strict membership in the interior of the dual cone.
bool dual_in_interior(const ConeDescriptor& cone, const ConePoint& r);

inline double barrier_parameter(const ConeDescriptor& cone) {
  return cone.nu();
}

}  // namespace conjbar
