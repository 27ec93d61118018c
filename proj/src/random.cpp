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

#include "emlab/random.hpp"

#include <cmath>
#include <numbers>

namespace emlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x51ed2701ULL));
}

double Rng::uniform() {
  // 53 uniform bits -> [0, 1).
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  // Box-Muller; the sine branch is discarded to keep the consumption
  // pattern simple (two engine words per variate).
  const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Matrix ginibre(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      g(i, j) = rng.complex_normal();
    }
  }
  return g;
}

Matrix haar_unitary(int dim, Rng& rng) {
  return orthonormalize_columns(ginibre(dim, dim, rng));
}

Matrix haar_isometry(int rows, int cols, Rng& rng) {
  if (rows < cols) {
    throw ValidationError("haar_isometry: rows must be >= cols");
  }
  return orthonormalize_columns(ginibre(rows, cols, rng));
}

PureState haar_pure_state(const FactoredSpace& space, Rng& rng) {
  Vector v(space.total_dim());
  for (int i = 0; i < space.total_dim(); ++i) v(i) = rng.complex_normal();
  v /= v.norm();
  return PureState(space, std::move(v));
}

Subspace haar_subspace(const FactoredSpace& space, int k, Rng& rng) {
  return Subspace(space, haar_isometry(space.total_dim(), k, rng));
}

DensityMatrix random_density(const FactoredSpace& space, int rank, Rng& rng) {
  if (rank < 1) throw ValidationError("random_density: rank must be >= 1");
  const Matrix g = ginibre(space.total_dim(), rank, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  // Symmetrize away the last bits of rounding noise.
  m = 0.5 * (m + Matrix(m.adjoint()));
  return DensityMatrix(space, std::move(m));
}

}  // namespace emlab
