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
#include <functional>
#include <variant>
#include <vector>

#include "emlab/states.hpp"

namespace emlab {

struct OptimizerConfig {
  int restarts = 32;
  int max_iters = 500;
  double grad_tol = 1e-9;
  // Backtracking line-search policy.
  double initial_step = 1.0;
  double backtrack_factor = 0.5;
  double armijo_c = 1e-4;
  double min_step = 1e-14;
  std::uint64_t master_seed = 0;
  /// Extra restart seeds. Warm starts occupy the first restart slots; the
  /// random-restart seed sequence does not shift when they are added, so a
  /// warm start can only improve the result.
  std::vector<PureState> warm_starts;
  /// Worker threads for restarts (results are schedule-independent).
  int jobs = 1;
  /// Ensemble size for the E_f search; 0 means rank^2.
  int ef_ensemble_size = 0;
};

/// Minimize the entanglement entropy over the unit sphere of a subspace.
struct SphereProblem {
  Subspace subspace;
  BipartiteCut cut;  // on subspace.space()
};

struct OptimResult {
  double value_bits = 0.0;
  Witness witness;
  bool converged = false;
  std::vector<int> iterations_per_restart;
  int best_restart_index = 0;
  double best_grad_norm = 0.0;

  const PureState& pure_witness() const {
    return std::get<PureState>(witness);
  }
  const Ensemble& ensemble_witness() const {
    return std::get<Ensemble>(witness);
  }
};

/// Objective value f(c) = S(tr_B |Bc><Bc|) in bits, defined for any c (no
/// normalization is applied; callers evaluate it on the unit sphere).
double entanglement_objective(const Vector& coords,
                              const SphereProblem& problem);

/// Euclidean gradient of entanglement_objective: the complex vector g with
/// df = Re <g, dc>; component j is d f/d Re(c_j) + i d f/d Im(c_j). Tangent
/// projection is the caller's job. Reduced-state eigenvalues are floored at
/// 1e-12 inside the logarithm to keep the gradient finite at zero entropy.
Vector entanglement_gradient(const Vector& coords,
                             const SphereProblem& problem);

OptimResult minimize_entanglement(const SphereProblem& problem,
                                  const OptimizerConfig& cfg);

/// Entanglement of formation by ensemble search: decompositions of rho are
/// parametrized by isometries mixing the eigen-ensemble, optimized by
/// projected descent with QR retraction. The eigen-ensemble itself is always
/// one of the starting points.
OptimResult minimize_ef(const DensityMatrix& rho, const BipartiteCut& cut,
                        const OptimizerConfig& cfg);

// --- generic engine (also used for the direct minimum-output-entropy route)

struct SphereObjective {
  int dim = 0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

struct SphereResult {
  double value = 0.0;
  Vector coords;
  bool converged = false;
  std::vector<int> iterations_per_restart;
  int best_restart_index = 0;
  double best_grad_norm = 0.0;
};

/// Multistart projected gradient descent on the unit sphere of C^dim.
/// Restart i of the random block draws its generator from
/// derive_seed(cfg.master_seed, i); ties are broken by lowest restart index.
SphereResult minimize_on_sphere(const SphereObjective& objective,
                                const OptimizerConfig& cfg,
                                const std::vector<Vector>& warm_coords = {});

}  // namespace emlab
