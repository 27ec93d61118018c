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

#include "emlab/states.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace emlab {

namespace {

// Multi-index of a flat index, slowest-first convention.
std::vector<int> unflatten(long flat, const std::vector<int>& dims,
                           const std::vector<long>& strides) {
  std::vector<int> idx(dims.size());
  for (size_t i = 0; i < dims.size(); ++i) {
    idx[i] = static_cast<int>((flat / strides[i]) % dims[i]);
  }
  return idx;
}

// Positions (in space order) of the given labels, preserving space order.
std::vector<int> positions_of(const FactoredSpace& space,
                              const std::vector<std::string>& labels) {
  std::set<std::string> wanted(labels.begin(), labels.end());
  if (wanted.size() != labels.size()) {
    throw ValidationError("duplicate factor label in selection");
  }
  for (const auto& l : labels) space.index_of(l);
  std::vector<int> pos;
  for (int i = 0; i < space.factor_count(); ++i) {
    if (wanted.count(space.factor(i).label)) pos.push_back(i);
  }
  return pos;
}

}  // namespace

DensityMatrix::DensityMatrix(FactoredSpace space, Matrix m)
    : space_(std::move(space)), m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() != space_.total_dim()) {
    throw ValidationError("DensityMatrix: matrix shape does not match space");
  }
  const double herm = max_abs_diff(m_, m_.adjoint());
  if (herm > kHermitianTol) {
    throw ValidationError("DensityMatrix: not Hermitian (deviation " +
                          std::to_string(herm) + ")");
  }
  const double tr_err = std::abs(m_.trace() - Complex(1.0, 0.0));
  if (tr_err > kTraceTol) {
    throw ValidationError("DensityMatrix: trace differs from 1 by " +
                          std::to_string(tr_err));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m_,
                                               Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPsdTol) {
    throw ValidationError(
        "DensityMatrix: not positive semidefinite (min eigenvalue " +
        std::to_string(solver.eigenvalues().minCoeff()) + ")");
  }
}

PureState::PureState(FactoredSpace space, Vector v)
    : space_(std::move(space)), v_(std::move(v)) {
  if (v_.size() != space_.total_dim()) {
    throw ValidationError("PureState: vector length does not match space");
  }
  const double norm_err = std::abs(v_.norm() - 1.0);
  if (norm_err > kNormTol) {
    throw ValidationError("PureState: norm differs from 1 by " +
                          std::to_string(norm_err));
  }
}

DensityMatrix PureState::projector() const {
  return DensityMatrix(space_, v_ * v_.adjoint());
}

Subspace::Subspace(FactoredSpace space, Matrix basis)
    : space_(std::move(space)), basis_(std::move(basis)) {
  if (basis_.rows() != space_.total_dim()) {
    throw ValidationError("Subspace: basis rows do not match space dimension");
  }
  if (basis_.cols() < 1 || basis_.cols() > basis_.rows()) {
    throw ValidationError("Subspace: need 1 <= k <= ambient dimension");
  }
  const Matrix gram = basis_.adjoint() * basis_;
  const double dev =
      max_abs_diff(gram, Matrix::Identity(basis_.cols(), basis_.cols()));
  if (dev > kOrthoTol) {
    throw ValidationError("Subspace: columns not orthonormal (deviation " +
                          std::to_string(dev) + ")");
  }
}

PureState Subspace::member(const Vector& coords) const {
  if (coords.size() != basis_.cols()) {
    throw ValidationError("Subspace::member: coordinate length mismatch");
  }
  Vector v = basis_ * coords;
  v /= v.norm();
  return PureState(space_, std::move(v));
}

Matrix Ensemble::mixture() const {
  if (members.empty()) throw ValidationError("Ensemble: no members");
  const int d = members.front().state.dim();
  Matrix m = Matrix::Zero(d, d);
  for (const auto& mem : members) {
    m += mem.weight * (mem.state.vector() * mem.state.vector().adjoint());
  }
  return m;
}

Matrix partial_trace_raw(const Matrix& m, const FactoredSpace& space,
                         const std::vector<std::string>& keep) {
  if (m.rows() != space.total_dim() || m.cols() != space.total_dim()) {
    throw ValidationError("partial_trace: matrix shape does not match space");
  }
  const std::vector<int> keep_pos = positions_of(space, keep);
  if (keep_pos.empty() ||
      static_cast<int>(keep_pos.size()) == space.factor_count()) {
    throw ValidationError("partial_trace: must keep a proper nonempty subset");
  }

  const std::vector<int> dims = space.dims();
  const std::vector<long> strides = strides_of(dims);

  std::vector<int> trace_pos;
  for (int i = 0; i < space.factor_count(); ++i) {
    if (std::find(keep_pos.begin(), keep_pos.end(), i) == keep_pos.end()) {
      trace_pos.push_back(i);
    }
  }

  long keep_dim = 1, trace_dim = 1;
  for (int p : keep_pos) keep_dim *= dims[p];
  for (int p : trace_pos) trace_dim *= dims[p];

  // Flat ambient index of (kept multi-index k, traced multi-index t).
  std::vector<int> kd, td;
  for (int p : keep_pos) kd.push_back(dims[p]);
  for (int p : trace_pos) td.push_back(dims[p]);
  const std::vector<long> ks = strides_of(kd);
  const std::vector<long> ts = strides_of(td);
  auto ambient = [&](long k, long t) {
    long flat = 0;
    for (size_t i = 0; i < keep_pos.size(); ++i) {
      flat += ((k / ks[i]) % kd[i]) * strides[keep_pos[i]];
    }
    for (size_t i = 0; i < trace_pos.size(); ++i) {
      flat += ((t / ts[i]) % td[i]) * strides[trace_pos[i]];
    }
    return flat;
  };

  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (long i = 0; i < keep_dim; ++i) {
    for (long j = 0; j < keep_dim; ++j) {
      Complex sum = 0.0;
      for (long t = 0; t < trace_dim; ++t) {
        sum += m(ambient(i, t), ambient(j, t));
      }
      out(i, j) = sum;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::string>& keep) {
  const FactoredSpace& space = rho.space();
  Matrix out = partial_trace_raw(rho.matrix(), space, keep);
  const std::vector<int> keep_pos = positions_of(space, keep);
  std::vector<Factor> kept_factors;
  for (int p : keep_pos) kept_factors.push_back(space.factor(p));
  out = 0.5 * (out + Matrix(out.adjoint()));
  return DensityMatrix(FactoredSpace(std::move(kept_factors)),
                       std::move(out));
}

DensityMatrix reduced_density(const PureState& phi,
                              const std::vector<std::string>& keep) {
  const FactoredSpace& space = phi.space();
  const std::vector<int> keep_pos = positions_of(space, keep);
  if (keep_pos.empty() ||
      static_cast<int>(keep_pos.size()) == space.factor_count()) {
    throw ValidationError("reduced_density: must keep a proper subset");
  }
  std::vector<std::string> other;
  for (int i = 0; i < space.factor_count(); ++i) {
    if (std::find(keep_pos.begin(), keep_pos.end(), i) == keep_pos.end()) {
      other.push_back(space.factor(i).label);
    }
  }
  std::vector<std::string> keep_ordered;
  std::vector<Factor> kept_factors;
  for (int p : keep_pos) {
    keep_ordered.push_back(space.factor(p).label);
    kept_factors.push_back(space.factor(p));
  }
  CutLayout layout(space, BipartiteCut{keep_ordered, other});
  const Matrix m = layout.cut_matrix(phi.vector());
  return DensityMatrix(FactoredSpace(std::move(kept_factors)),
                       m * m.adjoint());
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_bits(rho.matrix());
}

Subspace support(const DensityMatrix& rho, double rel_tol) {
  const EigSystem eig = hermitian_eig(rho.matrix());
  const double lam_max = eig.values.maxCoeff();
  if (lam_max <= 0.0) {
    throw ValidationError("support: operator has empty support");
  }
  const double threshold = rel_tol * lam_max;
  std::vector<int> cols;
  for (int i = static_cast<int>(eig.values.size()) - 1; i >= 0; --i) {
    if (eig.values[i] > threshold) cols.push_back(i);
  }
  if (cols.empty()) {
    throw ValidationError("support: operator has empty support");
  }
  Matrix basis(rho.dim(), cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    basis.col(j) = eig.vectors.col(cols[j]);
  }
  return Subspace(rho.space(), std::move(basis));
}

namespace {

// Permutation of flat indices induced by reordering factors. Entry [old]
// gives the new flat index.
std::vector<long> index_permutation(const FactoredSpace& space,
                                    const std::vector<std::string>& new_order) {
  if (static_cast<int>(new_order.size()) != space.factor_count()) {
    throw ValidationError("regroup: new order must list every factor once");
  }
  std::vector<int> new_pos(space.factor_count());  // new slot of old factor
  {
    std::set<std::string> seen;
    for (size_t s = 0; s < new_order.size(); ++s) {
      const int old_pos = space.index_of(new_order[s]);
      if (!seen.insert(new_order[s]).second) {
        throw ValidationError("regroup: duplicate label '" + new_order[s] +
                              "'");
      }
      new_pos[old_pos] = static_cast<int>(s);
    }
  }
  const std::vector<int> dims = space.dims();
  const std::vector<long> strides = strides_of(dims);
  std::vector<int> new_dims(dims.size());
  for (size_t i = 0; i < dims.size(); ++i) new_dims[new_pos[i]] = dims[i];
  const std::vector<long> new_strides = strides_of(new_dims);

  std::vector<long> perm(space.total_dim());
  for (long flat = 0; flat < space.total_dim(); ++flat) {
    const std::vector<int> idx = unflatten(flat, dims, strides);
    long out = 0;
    for (size_t i = 0; i < dims.size(); ++i) {
      out += static_cast<long>(idx[i]) * new_strides[new_pos[i]];
    }
    perm[flat] = out;
  }
  return perm;
}

FactoredSpace reordered_space(const FactoredSpace& space,
                              const std::vector<std::string>& new_order) {
  std::vector<Factor> fs;
  for (const auto& l : new_order) {
    fs.push_back(space.factor(space.index_of(l)));
  }
  return FactoredSpace(std::move(fs));
}

}  // namespace

PureState regroup(const PureState& phi,
                  const std::vector<std::string>& new_order) {
  const std::vector<long> perm = index_permutation(phi.space(), new_order);
  Vector v(phi.dim());
  for (long i = 0; i < phi.dim(); ++i) v(perm[i]) = phi.vector()(i);
  return PureState(reordered_space(phi.space(), new_order), std::move(v));
}

DensityMatrix regroup(const DensityMatrix& rho,
                      const std::vector<std::string>& new_order) {
  const std::vector<long> perm = index_permutation(rho.space(), new_order);
  Matrix m(rho.dim(), rho.dim());
  for (long i = 0; i < rho.dim(); ++i) {
    for (long j = 0; j < rho.dim(); ++j) {
      m(perm[i], perm[j]) = rho.matrix()(i, j);
    }
  }
  return DensityMatrix(reordered_space(rho.space(), new_order), std::move(m));
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState(concat(a.space(), b.space()),
                   kron(a.vector(), b.vector()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(concat(a.space(), b.space()),
                       kron(a.matrix(), b.matrix()));
}

PureState relabel(const PureState& a, const std::string& suffix) {
  return PureState(relabeled(a.space(), suffix), a.vector());
}

DensityMatrix relabel(const DensityMatrix& a, const std::string& suffix) {
  return DensityMatrix(relabeled(a.space(), suffix), a.matrix());
}

CutLayout::CutLayout(const FactoredSpace& space, const BipartiteCut& cut) {
  validate_cut(space, cut);
  const std::vector<int> a_pos = positions_of(space, cut.side_a);
  const std::vector<int> b_pos = positions_of(space, cut.side_b);
  const std::vector<int> dims = space.dims();
  const std::vector<long> strides = strides_of(dims);

  dim_a_ = 1;
  for (int p : a_pos) dim_a_ *= dims[p];
  dim_b_ = 1;
  for (int p : b_pos) dim_b_ *= dims[p];

  amb_to_ab_.resize(space.total_dim());
  for (long flat = 0; flat < space.total_dim(); ++flat) {
    const std::vector<int> idx = unflatten(flat, dims, strides);
    long a = 0, b = 0;
    for (int p : a_pos) a = a * dims[p] + idx[p];
    for (int p : b_pos) b = b * dims[p] + idx[p];
    amb_to_ab_[flat] = static_cast<int>(a * dim_b_ + b);
  }
}

Matrix CutLayout::cut_matrix(const Vector& psi) const {
  if (psi.size() != static_cast<long>(amb_to_ab_.size())) {
    throw ValidationError("CutLayout: vector length mismatch");
  }
  Matrix m(dim_a_, dim_b_);
  for (long i = 0; i < psi.size(); ++i) {
    const int t = amb_to_ab_[i];
    m(t / dim_b_, t % dim_b_) = psi(i);
  }
  return m;
}

Vector CutLayout::ambient_vector(const Matrix& m) const {
  if (m.rows() != dim_a_ || m.cols() != dim_b_) {
    throw ValidationError("CutLayout: matrix shape mismatch");
  }
  Vector psi(amb_to_ab_.size());
  for (size_t i = 0; i < amb_to_ab_.size(); ++i) {
    const int t = amb_to_ab_[i];
    psi(i) = m(t / dim_b_, t % dim_b_);
  }
  return psi;
}

double entanglement_entropy(const PureState& phi, const BipartiteCut& cut) {
  CutLayout layout(phi.space(), cut);
  const Matrix m = layout.cut_matrix(phi.vector());
  // Both reductions share a spectrum; use the smaller side.
  const Matrix reduced = (layout.dim_a() <= layout.dim_b())
                             ? Matrix(m * m.adjoint())
                             : Matrix(m.adjoint() * m);
  return entropy_bits(reduced);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw ValidationError("trace_distance: dimension mismatch");
  }
  const EigSystem eig = hermitian_eig(a.matrix() - b.matrix());
  return 0.5 * eig.values.cwiseAbs().sum();
}

PureState basis_state(const FactoredSpace& space, int index) {
  Vector v = Vector::Zero(space.total_dim());
  v(index) = 1.0;
  return PureState(space, std::move(v));
}

PureState bell_phi_plus(const std::string& label_a,
                        const std::string& label_b) {
  FactoredSpace space({{label_a, 2}, {label_b, 2}});
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState(std::move(space), std::move(v));
}

DensityMatrix uniform_mixture(const Subspace& s) {
  return DensityMatrix(s.space(),
                       s.projector() / static_cast<double>(s.dim()));
}

Subspace antisymmetric_subspace(int d, const std::string& label_a,
                                const std::string& label_b) {
  if (d < 2) throw ValidationError("antisymmetric_subspace: need d >= 2");
  FactoredSpace space({{label_a, d}, {label_b, d}});
  const int k = d * (d - 1) / 2;
  Matrix basis = Matrix::Zero(d * d, k);
  int col = 0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      basis(i * d + j, col) = inv_sqrt2;
      basis(j * d + i, col) = -inv_sqrt2;
      ++col;
    }
  }
  return Subspace(std::move(space), std::move(basis));
}

}  // namespace emlab
