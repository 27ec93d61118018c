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

#include <string>
#include <variant>
#include <vector>

#include "emlab/linalg.hpp"
#include "emlab/space.hpp"

namespace emlab {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kOrthoTol = 1e-10;

/// Positive unit-trace Hermitian operator with explicit factor structure.
/// Construction validates Hermiticity, trace and positivity.
class DensityMatrix {
 public:
  DensityMatrix(FactoredSpace space, Matrix m);

  const FactoredSpace& space() const { return space_; }
  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  FactoredSpace space_;
  Matrix m_;
};

/// Unit vector with factor structure.
class PureState {
 public:
  PureState(FactoredSpace space, Vector v);

  const FactoredSpace& space() const { return space_; }
  const Vector& vector() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }

  DensityMatrix projector() const;

 private:
  FactoredSpace space_;
  Vector v_;
};

/// Orthonormal-column isometry picking out a k-dimensional subspace of a
/// factored space.
class Subspace {
 public:
  Subspace(FactoredSpace space, Matrix basis);

  const FactoredSpace& space() const { return space_; }
  const Matrix& basis() const { return basis_; }
  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }

  Matrix projector() const { return basis_ * basis_.adjoint(); }
  /// The ambient state with the given subspace coordinates.
  PureState member(const Vector& coords) const;

 private:
  FactoredSpace space_;
  Matrix basis_;
};

/// Weighted list of pure states (a mixed-state decomposition).
struct Ensemble {
  struct Member {
    double weight;
    PureState state;
  };
  std::vector<Member> members;

  /// Sum of weight * projector, as a raw matrix.
  Matrix mixture() const;
};

/// A value's certificate: the pure state or ensemble realizing it.
using Witness = std::variant<Ensemble, PureState>;

// ---------------------------------------------------------------------------
// Operations

/// Reduced density matrix on the kept factors (original factor order kept).
/// `keep` must be a nonempty proper subset of the space's labels.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::string>& keep);

/// Partial trace of an arbitrary operator on `space`; no state validation.
Matrix partial_trace_raw(const Matrix& m, const FactoredSpace& space,
                         const std::vector<std::string>& keep);

/// Reduction of a pure state without forming the ambient projector.
DensityMatrix reduced_density(const PureState& phi,
                              const std::vector<std::string>& keep);

/// -sum lambda log2 lambda of the spectrum, in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// Subspace spanned by eigenvectors with eigenvalue > rel_tol * lambda_max,
/// ordered by descending eigenvalue. Rank-zero input throws ValidationError.
Subspace support(const DensityMatrix& rho, double rel_tol = kSupportRelTol);

/// Permute tensor factors. `new_order` must be a permutation of the labels.
PureState regroup(const PureState& phi,
                  const std::vector<std::string>& new_order);
DensityMatrix regroup(const DensityMatrix& rho,
                      const std::vector<std::string>& new_order);

/// Tensor products; factor labels must be disjoint (relabel first if needed).
PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

PureState relabel(const PureState& a, const std::string& suffix);
DensityMatrix relabel(const DensityMatrix& a, const std::string& suffix);

/// Precomputed reshaping of a factored space along a cut: ambient flat index
/// -> (row, col) of the side_a x side_b coefficient matrix. Factor order
/// within each side follows the space's own order.
class CutLayout {
 public:
  CutLayout(const FactoredSpace& space, const BipartiteCut& cut);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }

  /// Coefficient matrix M with M(a, b) = psi[ambient(a, b)].
  Matrix cut_matrix(const Vector& psi) const;
  /// Inverse of cut_matrix: scatter M back into an ambient vector.
  Vector ambient_vector(const Matrix& m) const;

 private:
  int dim_a_ = 0;
  int dim_b_ = 0;
  std::vector<int> amb_to_ab_;
};

/// Entropy of entanglement across a cut (von Neumann entropy of either
/// reduction), in bits.
double entanglement_entropy(const PureState& phi, const BipartiteCut& cut);

/// (1/2) * trace norm of the difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Convenience constructors used throughout the tests and the CLI.
PureState basis_state(const FactoredSpace& space, int index);
PureState bell_phi_plus(const std::string& label_a = "H1",
                        const std::string& label_b = "H2");
/// Normalized projector onto a subspace, as a density matrix.
DensityMatrix uniform_mixture(const Subspace& s);
/// The antisymmetric subspace of C^d (x) C^d.
Subspace antisymmetric_subspace(int d, const std::string& label_a = "H1",
                                const std::string& label_b = "H2");

}  // namespace emlab
