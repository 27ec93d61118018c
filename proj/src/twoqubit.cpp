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

#include "emlab/twoqubit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace emlab {

namespace {

// Y (x) Y, the spin-flip matrix (real symmetric).
Matrix spin_flip() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 3) = -1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 0) = -1.0;
  return s;
}

}  // namespace

double concurrence(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw ValidationError("concurrence: expected a 4x4 matrix");
  }
  // The singular values of the spin-flip form on the subnormalized
  // eigenbasis are the roots usually read off rho (Y(x)Y) rho* (Y(x)Y);
  // this route goes through Hermitian solves only and is accurate to
  // machine precision.
  const EigSystem eig = hermitian_eig(rho);
  Matrix v(4, 4);
  for (int k = 0; k < 4; ++k) {
    v.col(k) = std::sqrt(std::max(0.0, eig.values[k])) * eig.vectors.col(k);
  }
  const Matrix s = spin_flip();
  Matrix tau(4, 4);
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      tau(k, l) = v.col(k).dot(s * v.col(l).conjugate());
    }
  }
  Eigen::JacobiSVD<Matrix> svd(tau);
  const RealVector roots = svd.singularValues();  // descending
  return std::max(0.0, roots(0) - roots(1) - roots(2) - roots(3));
}

double ef_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy_bits(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

bool is_two_qubit(const DensityMatrix& rho, const BipartiteCut& cut) {
  if (rho.space().factor_count() != 2) return false;
  if (rho.space().factor(0).dim != 2 || rho.space().factor(1).dim != 2) {
    return false;
  }
  return cut.side_a.size() == 1 && cut.side_b.size() == 1;
}

namespace {

// Takagi factorization tau = U diag(sigma) U^T of a complex symmetric
// matrix, sigma descending and non-negative. Computed through the real
// symmetric embedding T = [[Re, Im], [Im, -Re]], whose spectrum splits into
// +/- sigma pairs: if T(x;y) = sigma (x;y) then u = x + iy satisfies
// tau conj(u) = sigma u, and vectors from the positive part are
// automatically orthonormal because (x;y) -> (-y;x) maps the +sigma
// eigenspace onto the -sigma one.
struct TakagiResult {
  RealVector sigma;
  Matrix u;
};

TakagiResult takagi(const Matrix& tau_in) {
  const int r = static_cast<int>(tau_in.rows());
  const Matrix tau = 0.5 * (tau_in + Matrix(tau_in.transpose()));

  Eigen::MatrixXd t(2 * r, 2 * r);
  t.topLeftCorner(r, r) = tau.real();
  t.topRightCorner(r, r) = tau.imag();
  t.bottomLeftCorner(r, r) = tau.imag();
  t.bottomRightCorner(r, r) = -tau.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  if (es.info() != Eigen::Success) {
    throw NumericalError("takagi: eigensolver failed");
  }

  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  const double tol = 1e-12 * scale;

  TakagiResult out;
  out.sigma = RealVector::Zero(r);
  out.u = Matrix::Zero(r, r);
  auto complexify = [&](const Eigen::VectorXd& w) {
    Vector u(r);
    for (int k = 0; k < r; ++k) u(k) = Complex(w(k), w(k + r));
    return u;
  };

  int col = 0;
  for (int i = 2 * r - 1; i >= 0 && col < r; --i) {
    if (es.eigenvalues()(i) <= tol) break;  // descending scan of positives
    out.sigma(col) = es.eigenvalues()(i);
    out.u.col(col) = complexify(es.eigenvectors().col(i));
    ++col;
  }

  if (col < r) {
    // Kernel of T is invariant under J(x;y) = (-y;x); pick one vector per
    // J-pair so the complexified columns stay orthonormal.
    std::vector<Eigen::VectorXd> kernel;
    for (int i = 0; i < 2 * r; ++i) {
      if (std::abs(es.eigenvalues()(i)) <= tol) {
        kernel.push_back(es.eigenvectors().col(i));
      }
    }
    std::vector<Eigen::VectorXd> chosen;
    auto jmap = [&](const Eigen::VectorXd& w) {
      Eigen::VectorXd v(2 * r);
      v.head(r) = -w.tail(r);
      v.tail(r) = w.head(r);
      return v;
    };
    for (const auto& cand : kernel) {
      if (col >= r) break;
      Eigen::VectorXd w = cand;
      for (const auto& c : chosen) {
        w -= c.dot(w) * c;
        const Eigen::VectorXd jc = jmap(c);
        w -= jc.dot(w) * jc;
      }
      if (w.norm() < 1e-6) continue;
      w.normalize();
      chosen.push_back(w);
      out.sigma(col) = 0.0;
      out.u.col(col) = complexify(w);
      ++col;
    }
  }
  if (col != r) throw NumericalError("takagi: could not complete the basis");

  const double residual =
      max_abs_diff(tau * out.u.conjugate(),
                   Matrix(out.u * out.sigma.asDiagonal()));
  const double ortho = max_abs_diff(Matrix(out.u.adjoint() * out.u),
                                    Matrix::Identity(r, r));
  if (residual > 1e-8 || ortho > 1e-10) {
    throw NumericalError("takagi: verification failed (residual " +
                         std::to_string(residual) + ")");
  }
  return out;
}

// Planar phases phi_1..phi_4 with sum sigma_j e^{i phi_j} ~ 0, for descending
// sigma satisfying the polygon condition sigma_1 <= sigma_2+sigma_3+sigma_4.
std::array<double, 4> closing_phases(const std::array<double, 4>& sigma) {
  const double s1 = sigma[0], s2 = sigma[1], s3 = sigma[2], s4 = sigma[3];
  std::array<double, 4> phi{0.0, 0.0, 0.0, 0.0};
  if (s2 <= 0.0) return phi;  // then every entry is ~0

  const double lo = std::max(s1 - s2, s3 - s4);
  const double hi = std::min(s1 + s2, s3 + s4);
  const double link = 0.5 * (lo + std::max(lo, hi));  // length of w3 + w4

  const Complex w1(s1, 0.0);
  const double c2 =
      std::clamp((link * link - s1 * s1 - s2 * s2) / (2.0 * s1 * s2), -1.0,
                 1.0);
  const Complex w2 = s2 * std::polar(1.0, std::acos(c2));
  const Complex u = -(w1 + w2);  // target for w3 + w4

  Complex w3(0.0, 0.0), w4(0.0, 0.0);
  const double ulen = std::abs(u);
  if (s3 <= 0.0) {
    // nothing to place
  } else if (ulen <= 1e-15) {
    w3 = Complex(s3, 0.0);
    w4 = Complex(-s3, 0.0);  // s3 == s4 here by the polygon condition
  } else {
    const double c3 = std::clamp(
        (ulen * ulen + s3 * s3 - s4 * s4) / (2.0 * ulen * s3), -1.0, 1.0);
    w3 = s3 * std::polar(1.0, std::arg(u) + std::acos(c3));
    w4 = u - w3;
  }
  phi[1] = std::arg(w2);
  if (s3 > 0.0) phi[2] = std::arg(w3);
  if (s4 > 0.0) phi[3] = std::arg(w4);
  return phi;
}

}  // namespace

Ensemble optimal_ef_ensemble(const DensityMatrix& rho,
                             const BipartiteCut& cut) {
  if (!is_two_qubit(rho, cut)) {
    throw ValidationError("optimal_ef_ensemble: not a two-qubit problem");
  }
  // Work in the order (side_a factor, side_b factor).
  const std::vector<std::string> order{cut.side_a.front(),
                                       cut.side_b.front()};
  const bool needs_regroup = rho.space().labels() != order;
  const DensityMatrix work = needs_regroup ? regroup(rho, order) : rho;

  const EigSystem eig = hermitian_eig(work.matrix());
  const double lam_max = eig.values.maxCoeff();
  std::vector<int> cols;
  for (int i = 3; i >= 0; --i) {
    if (eig.values[i] > kSupportRelTol * lam_max) cols.push_back(i);
  }
  const int r = static_cast<int>(cols.size());

  Ensemble ens;
  if (r == 1) {
    ens.members.push_back(
        {1.0, PureState(work.space(), eig.vectors.col(cols[0]))});
  } else {
    Matrix v(4, r);
    for (int j = 0; j < r; ++j) {
      v.col(j) = std::sqrt(eig.values[cols[j]]) * eig.vectors.col(cols[j]);
    }
    const Matrix s = spin_flip();
    Matrix tau(r, r);
    for (int k = 0; k < r; ++k) {
      for (int l = 0; l < r; ++l) {
        tau(k, l) = v.col(k).dot(s * v.col(l).conjugate());
      }
    }
    tau = 0.5 * (tau + Matrix(tau.transpose()));

    const TakagiResult tk = takagi(tau);
    const double c_target =
        tk.sigma(0) - tk.sigma.tail(r - 1).sum();

    // Mixing matrices act on the subnormalized eigenvectors: member i is
    // sum_k a(i,k) v_k, and beta transforms by conjugate congruence:
    // B = conj(a) tau conj(a)^T. a0 = U^T diagonalizes: B = diag(sigma).
    Matrix a = tk.u.transpose();

    if (c_target > 0.0) {
      // Entangled branch: phases diag(1, i, i, ...) send B to
      // diag(s1, -s2, ..., -sr); then real pairwise rotations equalize all
      // preconcurrences to c_target. Both steps preserve
      // sum_i (B_ii - c N_ii) = 0.
      for (int i = 1; i < r; ++i) a.row(i) *= Complex(0.0, 1.0);

      auto recompute = [&](Matrix& b, Matrix& n) {
        const Matrix ac = a.conjugate();
        b = ac * tau * ac.transpose();
        n = Matrix::Zero(r, r);
        for (int i = 0; i < r; ++i) {
          for (int j = 0; j < r; ++j) {
            Complex acc = 0.0;
            for (int k = 0; k < r; ++k) {
              acc += std::conj(a(i, k)) * a(j, k) * eig.values[cols[k]];
            }
            n(i, j) = acc;
          }
        }
      };
      Matrix b, n;
      recompute(b, n);

      std::vector<bool> active(r, true);
      for (int round = 0; round + 1 < r; ++round) {
        int hi = -1, lo = -1;
        double hi_val = 1e-14, lo_val = -1e-14;
        for (int i = 0; i < r; ++i) {
          if (!active[i]) continue;
          const double si = b(i, i).real() - c_target * n(i, i).real();
          if (si > hi_val) {
            hi_val = si;
            hi = i;
          }
          if (si < lo_val) {
            lo_val = si;
            lo = i;
          }
        }
        if (hi < 0 || lo < 0) break;  // everything already equalized
        const double c_off =
            b(hi, lo).real() - c_target * n(hi, lo).real();
        // Root of s_lo t^2 + 2 c_off t + s_hi = 0 with t > 0.
        const double disc =
            std::sqrt(c_off * c_off - hi_val * lo_val);
        const double t = (-c_off - disc) / lo_val;  // lo_val < 0
        const double cth = 1.0 / std::sqrt(1.0 + t * t);
        const double sth = t * cth;
        const Vector row_hi = a.row(hi);
        const Vector row_lo = a.row(lo);
        a.row(hi) = cth * row_hi.transpose() + sth * row_lo.transpose();
        a.row(lo) = -sth * row_hi.transpose() + cth * row_lo.transpose();
        recompute(b, n);
        active[hi] = false;  // this member now sits exactly at c_target
      }
    } else {
      // Separable branch: close the sigma polygon with phases, then mix
      // with the real Hadamard; the sign pattern squares away and every
      // member's preconcurrence becomes (1/4) sum sigma_j e^{i phi_j} ~ 0.
      std::array<double, 4> sig{0.0, 0.0, 0.0, 0.0};
      for (int j = 0; j < r; ++j) sig[j] = tk.sigma(j);
      const std::array<double, 4> phi = closing_phases(sig);

      Matrix padded = Matrix::Zero(4, r);
      padded.topRows(r) = a;
      for (int j = 0; j < r; ++j) {
        // conj(p_j)^2 = e^{i phi_j}
        padded.row(j) *= std::polar(1.0, -0.5 * phi[j]);
      }
      Matrix hadamard(4, 4);
      hadamard << 1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1;
      a = 0.5 * hadamard * padded;
    }

    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Vector z = v * a.row(i).transpose();
      const double q = z.squaredNorm();
      if (q <= 1e-12) continue;
      ens.members.push_back({q, PureState(work.space(), z / std::sqrt(q))});
    }
  }

  if (needs_regroup) {
    for (auto& mem : ens.members) {
      mem.state = regroup(mem.state, rho.space().labels());
    }
  }
  return ens;
}

}  // namespace emlab
