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

#include "emlab/states.hpp"

namespace emlab {

/// Concurrence of a two-qubit state given as a 4x4 matrix in the product
/// basis (first qubit slowest): max(0, s1 - s2 - s3 - s4) with s_i the
/// descending square roots of the eigenvalues of rho (Y(x)Y) rho* (Y(x)Y).
double concurrence(const Matrix& rho);

/// Entanglement of formation in bits from the concurrence:
/// h((1 + sqrt(1 - c^2)) / 2) with h the binary entropy.
double ef_from_concurrence(double c);

/// A decomposition of rho in which every member has pure-state concurrence
/// equal to concurrence(rho), so the ensemble average entanglement equals
/// ef_from_concurrence(concurrence(rho)). Deterministic construction: Takagi
/// factorization of the spin-flip form on the eigen-ensemble, a phase step,
/// then pairwise real rotations (entangled case) or a Hadamard mixing over a
/// closed sigma polygon (separable case). `cut.side_a` picks which factor
/// plays the first-qubit role.
Ensemble optimal_ef_ensemble(const DensityMatrix& rho,
                             const BipartiteCut& cut);

/// True when the state is a pair of qubit factors and the cut separates
/// them, i.e. the closed-form route applies.
bool is_two_qubit(const DensityMatrix& rho, const BipartiteCut& cut);

}  // namespace emlab
