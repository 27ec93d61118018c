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

#include <cstdint>
#include <random>

#include "emlab/states.hpp"

namespace emlab {

/// Stateless mix of a master seed and a stream index. Used to hand each
/// restart / trial its own generator so parallel schedules cannot change
/// results.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Deterministic random source. The Gaussian variates are produced by a
/// hand-rolled Box-Muller over the (standardized) mt19937_64 output stream,
/// so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }
  /// Uniform in [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  Complex complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 eng_;
};

/// Matrix of independent complex Gaussians.
Matrix ginibre(int rows, int cols, Rng& rng);

/// Haar-distributed unitary (Gaussian matrix + phase-fixed QR).
Matrix haar_unitary(int dim, Rng& rng);

/// Haar-distributed isometry with rows >= cols.
Matrix haar_isometry(int rows, int cols, Rng& rng);

PureState haar_pure_state(const FactoredSpace& space, Rng& rng);

Subspace haar_subspace(const FactoredSpace& space, int k, Rng& rng);

/// Random density matrix G G^dag / tr with G a (dim x rank) Ginibre matrix;
/// rank = dim gives the Hilbert-Schmidt ensemble.
DensityMatrix random_density(const FactoredSpace& space, int rank, Rng& rng);

}  // namespace emlab
