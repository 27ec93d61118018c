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

#include "emlab/optimizer.hpp"

#include <cmath>
#include <utility>

#include "emlab/parallel.hpp"
#include "emlab/random.hpp"

namespace emlab {

namespace {

constexpr double kGradEigFloor = 1e-12;
constexpr double kLog2e = 1.4426950408889634;  // 1 / ln 2

// -log2 of the spectrum applied eigenvalue-wise, with flooring. `shift`
// subtracts log2(total) so that G = -log2(sigma / total).
Matrix neg_log2_of(const Matrix& sigma, double total) {
  const EigSystem eig = hermitian_eig(sigma, 1e-6);
  Matrix g = Matrix::Zero(sigma.rows(), sigma.cols());
  for (Eigen::Index a = 0; a < eig.values.size(); ++a) {
    double ratio = eig.values[a] / total;
    if (ratio < kGradEigFloor) ratio = kGradEigFloor;
    g += (-std::log2(ratio)) * (eig.vectors.col(a) * eig.vectors.col(a).adjoint());
  }
  return g;
}

// Entropy in bits of an unnormalized PSD matrix: -sum lam log2 lam.
double raw_entropy_bits(const Matrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sigma, Eigen::EigenvaluesOnly);
  return entropy_bits(solver.eigenvalues());
}

struct RestartOutcome {
  double value = 0.0;
  Vector coords;
  bool converged = false;
  int iterations = 0;
  double grad_norm = 0.0;
};

RestartOutcome descend_on_sphere(const SphereObjective& objective,
                                 Vector start, const OptimizerConfig& cfg) {
  RestartOutcome out;
  Vector c = start / start.norm();
  double f = objective.value(c);
  double step = cfg.initial_step;
  double grad_norm = 0.0;

  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    const Vector g = objective.gradient(c);
    const Vector gt = g - std::real(c.dot(g)) * c;  // tangent projection
    grad_norm = gt.norm();
    if (grad_norm <= cfg.grad_tol) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    while (step >= cfg.min_step) {
      Vector c2 = c - step * gt;
      c2 /= c2.norm();
      const double f2 = objective.value(c2);
      if (f2 <= f - cfg.armijo_c * step * grad_norm * grad_norm) {
        c = std::move(c2);
        f = f2;
        accepted = true;
        break;
      }
      step *= cfg.backtrack_factor;
    }
    if (!accepted) break;  // no descent direction at working precision
    step = std::min(step * 2.0, cfg.initial_step);
  }

  out.value = f;
  out.coords = std::move(c);
  out.iterations = it;
  out.grad_norm = grad_norm;
  return out;
}

}  // namespace

SphereResult minimize_on_sphere(const SphereObjective& objective,
                                const OptimizerConfig& cfg,
                                const std::vector<Vector>& warm_coords) {
  if (objective.dim < 1) {
    throw ValidationError("minimize_on_sphere: empty problem");
  }
  if (cfg.restarts < 1) {
    throw ValidationError("minimize_on_sphere: restarts must be >= 1");
  }

  std::vector<Vector> starts;
  for (const auto& w : warm_coords) {
    if (w.size() != objective.dim) {
      throw ValidationError("minimize_on_sphere: warm start length mismatch");
    }
    if (w.norm() < 1e-8) continue;  // degenerate projection, nothing to seed
    starts.push_back(w / w.norm());
  }
  const int total = static_cast<int>(starts.size()) + cfg.restarts;
  starts.resize(total, Vector());
  // Random block: restart j keeps the same seed whether or not warm starts
  // are present, so adding a warm start can only improve the minimum.
  for (int j = 0; j < cfg.restarts; ++j) {
    Rng rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(j)));
    Vector v(objective.dim);
    for (int i = 0; i < objective.dim; ++i) v(i) = rng.complex_normal();
    starts[total - cfg.restarts + j] = v / v.norm();
  }

  std::vector<RestartOutcome> outcomes(total);
  parallel_for(total, cfg.jobs, [&](int i) {
    outcomes[i] = descend_on_sphere(objective, starts[i], cfg);
  });

  int best = 0;
  for (int i = 1; i < total; ++i) {
    if (outcomes[i].value < outcomes[best].value) best = i;
  }

  SphereResult result;
  result.value = outcomes[best].value;
  result.coords = outcomes[best].coords;
  result.converged = outcomes[best].converged;
  result.best_restart_index = best;
  result.best_grad_norm = outcomes[best].grad_norm;
  result.iterations_per_restart.reserve(total);
  for (const auto& o : outcomes) {
    result.iterations_per_restart.push_back(o.iterations);
  }
  return result;
}

namespace {

struct EntanglementContext {
  Matrix basis;
  CutLayout layout;

  EntanglementContext(const SphereProblem& p)
      : basis(p.subspace.basis()), layout(p.subspace.space(), p.cut) {}

  double value(const Vector& c) const {
    const Matrix m = layout.cut_matrix(basis * c);
    const Matrix sigma = (layout.dim_a() <= layout.dim_b())
                             ? Matrix(m * m.adjoint())
                             : Matrix(m.adjoint() * m);
    return raw_entropy_bits(sigma);
  }

  Vector gradient(const Vector& c) const {
    const Vector psi = basis * c;
    const Matrix m = layout.cut_matrix(psi);
    const Matrix sigma = m * m.adjoint();
    // G = -(log2 sigma + I/ln2); the identity piece is kept explicit here
    // because the objective is the unnormalized extension of the entropy.
    const EigSystem eig = hermitian_eig(sigma, 1e-6);
    Matrix g = Matrix::Zero(sigma.rows(), sigma.cols());
    for (Eigen::Index a = 0; a < eig.values.size(); ++a) {
      double lam = eig.values[a];
      if (lam < kGradEigFloor) lam = kGradEigFloor;
      g += (-std::log2(lam) - kLog2e) *
           (eig.vectors.col(a) * eig.vectors.col(a).adjoint());
    }
    const Vector w = layout.ambient_vector(g * m);
    return 2.0 * (basis.adjoint() * w);
  }
};

}  // namespace

double entanglement_objective(const Vector& coords,
                              const SphereProblem& problem) {
  return EntanglementContext(problem).value(coords);
}

Vector entanglement_gradient(const Vector& coords,
                             const SphereProblem& problem) {
  return EntanglementContext(problem).gradient(coords);
}

OptimResult minimize_entanglement(const SphereProblem& problem,
                                  const OptimizerConfig& cfg) {
  const EntanglementContext ctx(problem);
  SphereObjective objective;
  objective.dim = problem.subspace.dim();
  objective.value = [&ctx](const Vector& c) { return ctx.value(c); };
  objective.gradient = [&ctx](const Vector& c) { return ctx.gradient(c); };

  std::vector<Vector> warm;
  for (const auto& w : cfg.warm_starts) {
    if (w.dim() != problem.subspace.ambient_dim()) {
      throw ValidationError(
          "minimize_entanglement: warm start dimension mismatch");
    }
    warm.push_back(problem.subspace.basis().adjoint() * w.vector());
  }

  SphereResult r = minimize_on_sphere(objective, cfg, warm);

  OptimResult result;
  result.value_bits = r.value;
  result.witness = problem.subspace.member(r.coords);
  result.converged = r.converged;
  result.iterations_per_restart = std::move(r.iterations_per_restart);
  result.best_restart_index = r.best_restart_index;
  result.best_grad_norm = r.best_grad_norm;
  return result;
}

// ---------------------------------------------------------------------------
// Entanglement of formation

namespace {

struct EfContext {
  Matrix subnorm;  // d x r, column i = sqrt(lambda_i) e_i
  CutLayout layout;
  int rank;
  int members;

  EfContext(const DensityMatrix& rho, const BipartiteCut& cut, int m_override)
      : layout(rho.space(), cut) {
    const EigSystem eig = hermitian_eig(rho.matrix());
    const double lam_max = eig.values.maxCoeff();
    std::vector<int> cols;
    for (int i = static_cast<int>(eig.values.size()) - 1; i >= 0; --i) {
      if (eig.values[i] > kSupportRelTol * lam_max) cols.push_back(i);
    }
    rank = static_cast<int>(cols.size());
    subnorm.resize(rho.dim(), rank);
    for (int j = 0; j < rank; ++j) {
      subnorm.col(j) =
          std::sqrt(eig.values[cols[j]]) * eig.vectors.col(cols[j]);
    }
    members = (m_override > 0) ? std::max(m_override, rank) : rank * rank;
  }

  // Average entanglement of the decomposition indexed by the isometry w
  // (members x rank): member j is sum_i w(j,i) * subnorm_i, entering with
  // its squared norm as weight.
  double value(const Matrix& w) const {
    const Matrix u = subnorm * w.transpose();  // d x members
    double total = 0.0;
    for (int j = 0; j < members; ++j) {
      const double t = u.col(j).squaredNorm();
      if (t <= 1e-14) continue;
      const Matrix m = layout.cut_matrix(u.col(j));
      const Matrix sigma = (layout.dim_a() <= layout.dim_b())
                               ? Matrix(m * m.adjoint())
                               : Matrix(m.adjoint() * m);
      // t * S(sigma/t) without forming the normalized matrix.
      total += raw_entropy_bits(sigma) + t * std::log2(t);
    }
    return total;
  }

  Matrix gradient(const Matrix& w) const {
    const Matrix u = subnorm * w.transpose();
    Matrix grad = Matrix::Zero(members, rank);
    for (int j = 0; j < members; ++j) {
      const double t = u.col(j).squaredNorm();
      if (t <= 1e-14) continue;
      const Matrix m = layout.cut_matrix(u.col(j));
      const Matrix sigma = m * m.adjoint();
      const Matrix g = neg_log2_of(sigma, t);
      const Vector wv = layout.ambient_vector(g * m);
      grad.row(j) = 2.0 * (subnorm.adjoint() * wv).transpose();
    }
    return grad;
  }

  Ensemble ensemble(const Matrix& w, const FactoredSpace& space) const {
    const Matrix u = subnorm * w.transpose();
    Ensemble ens;
    for (int j = 0; j < members; ++j) {
      const double t = u.col(j).squaredNorm();
      if (t <= 1e-12) continue;
      ens.members.push_back(
          {t, PureState(space, u.col(j) / std::sqrt(t))});
    }
    return ens;
  }
};

struct StiefelOutcome {
  double value = 0.0;
  Matrix point;
  bool converged = false;
  int iterations = 0;
  double grad_norm = 0.0;
};

StiefelOutcome descend_on_stiefel(const EfContext& ctx, Matrix w,
                                  const OptimizerConfig& cfg) {
  StiefelOutcome out;
  double f = ctx.value(w);
  double step = cfg.initial_step;
  double grad_norm = 0.0;

  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    const Matrix g = ctx.gradient(w);
    const Matrix wtg = w.adjoint() * g;
    const Matrix tangent = g - w * (0.5 * (wtg + Matrix(wtg.adjoint())));
    grad_norm = tangent.norm();
    if (grad_norm <= cfg.grad_tol) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    while (step >= cfg.min_step) {
      const Matrix w2 = orthonormalize_columns(w - step * tangent);
      const double f2 = ctx.value(w2);
      if (f2 <= f - cfg.armijo_c * step * grad_norm * grad_norm) {
        w = w2;
        f = f2;
        accepted = true;
        break;
      }
      step *= cfg.backtrack_factor;
    }
    if (!accepted) break;
    step = std::min(step * 2.0, cfg.initial_step);
  }

  out.value = f;
  out.point = std::move(w);
  out.iterations = it;
  out.grad_norm = grad_norm;
  return out;
}

}  // namespace

OptimResult minimize_ef(const DensityMatrix& rho, const BipartiteCut& cut,
                        const OptimizerConfig& cfg) {
  const EfContext ctx(rho, cut, cfg.ef_ensemble_size);

  // Start 0 is the eigen-ensemble embedding, so the result can never exceed
  // the eigen-ensemble average.
  std::vector<Matrix> starts;
  Matrix w0 = Matrix::Zero(ctx.members, ctx.rank);
  w0.topRows(ctx.rank) = Matrix::Identity(ctx.rank, ctx.rank);
  starts.push_back(std::move(w0));
  for (int j = 0; j < cfg.restarts; ++j) {
    Rng rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(j)));
    starts.push_back(haar_isometry(ctx.members, ctx.rank, rng));
  }

  const int total = static_cast<int>(starts.size());
  std::vector<StiefelOutcome> outcomes(total);
  parallel_for(total, cfg.jobs, [&](int i) {
    outcomes[i] = descend_on_stiefel(ctx, starts[i], cfg);
  });

  int best = 0;
  for (int i = 1; i < total; ++i) {
    if (outcomes[i].value < outcomes[best].value) best = i;
  }

  OptimResult result;
  result.value_bits = outcomes[best].value;
  result.witness = ctx.ensemble(outcomes[best].point, rho.space());
  result.converged = outcomes[best].converged;
  result.best_restart_index = best;
  result.best_grad_norm = outcomes[best].grad_norm;
  result.iterations_per_restart.reserve(total);
  for (const auto& o : outcomes) {
    result.iterations_per_restart.push_back(o.iterations);
  }
  return result;
}

}  // namespace emlab
