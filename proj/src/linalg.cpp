// Copyright 2026 The emlab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "emlab/linalg.hpp"

#include <cmath>

namespace emlab {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

EigSystem hermitian_eig(const Matrix& m, double herm_tol) {
  if (m.rows() != m.cols()) {
    throw ValidationError("hermitian_eig: matrix not square");
  }
  const double dev = max_abs_diff(m, m.adjoint());
  if (dev > herm_tol) {
    throw ValidationError("hermitian_eig: input not Hermitian (deviation " +
                          std::to_string(dev) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eig: eigensolver did not converge");
  }
  return EigSystem{solver.eigenvalues(), solver.eigenvectors()};
}

double entropy_bits(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double lam = eigenvalues[i];
    if (lam <= kEntropyZeroTol) continue;
    s -= lam * std::log2(lam);
  }
  return s;
}

double entropy_bits(const Matrix& rho) {
  return entropy_bits(hermitian_eig(rho).values);
}

double binary_entropy_bits(double p) {
  RealVector lams(2);
  lams << p, 1.0 - p;
  return entropy_bits(lams);
}

double bits_to_nats(double bits) { return bits * std::log(2.0); }

Matrix orthonormalize_columns(const Matrix& g) {
  if (g.rows() < g.cols()) {
    throw ValidationError("orthonormalize_columns: more columns than rows");
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
  const Matrix r = qr.matrixQR().topRows(g.cols());
  // Fix the column phases so R has a non-negative real diagonal. This makes
  // the map g -> Q deterministic and Haar-correct for Gaussian input.
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

}  // namespace emlab
