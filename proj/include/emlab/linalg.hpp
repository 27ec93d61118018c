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

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "emlab/errors.hpp"

namespace emlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigenvalues below this absolute threshold are treated as exact zeros when
/// evaluating entropies (continuous extension of x log x).
inline constexpr double kEntropyZeroTol = 1e-12;

/// Default relative eigenvalue threshold for numerical-rank decisions.
inline constexpr double kSupportRelTol = 1e-10;

/// Hermiticity tolerance accepted by the eigensolver wrapper.
inline constexpr double kHermTol = 1e-8;

/// Largest absolute entry of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Kronecker product, first operand varies slowest.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

struct EigSystem {
  RealVector values;  // ascending
  Matrix vectors;     // unitary, column i pairs with values[i]
};

/// Hermitian eigendecomposition. Input must be Hermitian within `herm_tol`
/// (max entrywise |M - M^dag|), otherwise a ValidationError is thrown.
EigSystem hermitian_eig(const Matrix& m, double herm_tol = kHermTol);

/// Entropy in bits of a probability-like eigenvalue list. Negative values are
/// clipped to zero; values <= kEntropyZeroTol contribute nothing.
double entropy_bits(const RealVector& eigenvalues);

/// Entropy in bits of a Hermitian PSD matrix (eigenvalues computed here).
double entropy_bits(const Matrix& rho);

/// -p log2 p - (1-p) log2 (1-p).
double binary_entropy_bits(double p);

double bits_to_nats(double bits);

/// Deterministic thin QR orthonormalization: returns Q with orthonormal
/// columns spanning the columns of g, with the phase convention that makes
/// the R diagonal real non-negative. Requires rows >= cols and full column
/// rank within working precision.
Matrix orthonormalize_columns(const Matrix& g);

}  // namespace emlab
