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

namespace conjbar {

/// A = U diag(eigenvalues) U^T with eigenvalues in descending order.
struct SymEigen {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

/// A = U diag(sigma) V^T for a d1 x d2 matrix with d1 <= d2. U is d1 x d1
/// orthogonal, V is d2 x d1 with orthonormal columns, sigma is descending.
struct Svd {
  Eigen::MatrixXd u;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd v;
};

/// Relative asymmetry accepted by sym_eigen.
inline constexpr double kSymmetryTolerance = 1e-13;

/// Throws InvalidArgument for a non-square or non-symmetric input.
SymEigen sym_eigen(const Eigen::MatrixXd& a);

/// Throws InvalidArgument if rows > cols.
Svd svd(const Eigen::MatrixXd& a);

/// Solves H x = b for symmetric positive definite H. Throws
/// NotPositiveDefinite when a pivot is not positive.
Eigen::VectorXd cholesky_solve(const Eigen::MatrixXd& h, const Eigen::VectorXd& b);

/// U diag(values) U^T.
Eigen::MatrixXd spectral_compose(const Eigen::MatrixXd& u, const Eigen::VectorXd& values);

}  // namespace conjbar
