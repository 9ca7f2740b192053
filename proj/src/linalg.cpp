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

#include "conjbar/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "conjbar/errors.hpp"

namespace conjbar {

SymEigen sym_eigen(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("sym_eigen: matrix is not square");
  const double scale = a.norm();
  if ((a - a.transpose()).norm() > kSymmetryTolerance * scale) {
    throw InvalidArgument("sym_eigen: matrix is not symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) throw Error("sym_eigen: eigensolver failed");
  // Eigen returns ascending order.
  SymEigen out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  return out;
}

Svd svd(const Eigen::MatrixXd& a) {
  if (a.rows() > a.cols()) throw InvalidArgument("svd: requires rows <= cols");
  Eigen::JacobiSVD<Eigen::MatrixXd> js(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {js.matrixU(), js.singularValues(), js.matrixV()};
}

Eigen::VectorXd cholesky_solve(const Eigen::MatrixXd& h, const Eigen::VectorXd& b) {
  if (h.rows() != h.cols() || h.rows() != b.size()) {
    throw InvalidArgument("cholesky_solve: dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("matrix is not positive definite");
  return llt.solve(b);
}

Eigen::MatrixXd spectral_compose(const Eigen::MatrixXd& u, const Eigen::VectorXd& values) {
  return u * values.asDiagonal() * u.transpose();
}

}  // namespace conjbar
