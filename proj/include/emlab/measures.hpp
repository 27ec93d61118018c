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

#include <optional>
#include <string>
#include <variant>

#include "emlab/channels.hpp"
#include "emlab/optimizer.hpp"
#include "emlab/twoqubit.hpp"

namespace emlab {

enum class Quantity { E, Ef, Em, Smin };
enum class Route { direct, via_duality, closed_form };

struct OptimDiagnostics {
  bool converged = true;
  int best_restart_index = 0;
  std::vector<int> iterations_per_restart;
  double best_grad_norm = 0.0;
};

/// A measure value together with the witness that certifies it: re-evaluating
/// the underlying objective at the witness reproduces value_bits.
struct MeasureResult {
  Quantity quantity = Quantity::E;
  double value_bits = 0.0;
  Witness witness;
  Route route = Route::direct;
  OptimDiagnostics diagnostics;

  const PureState& pure_witness() const {
    return std::get<PureState>(witness);
  }
  const Ensemble& ensemble_witness() const {
    return std::get<Ensemble>(witness);
  }
};

/// Entropy of entanglement of a pure state across a cut.
MeasureResult entanglement(const PureState& phi, const BipartiteCut& cut);

/// Minimum entanglement over pure states in the support of rho.
MeasureResult e_m(const DensityMatrix& rho, const BipartiteCut& cut,
                  const OptimizerConfig& cfg);

/// Entanglement of formation. Two-qubit inputs default to the closed-form
/// concurrence route; everything else runs the ensemble optimizer. The
/// override lets tests force either route on a two-qubit input.
MeasureResult e_f(const DensityMatrix& rho, const BipartiteCut& cut,
                  const OptimizerConfig& cfg,
                  std::optional<Route> route_override = std::nullopt);

/// Minimum output entropy. Route direct optimizes over input states through
/// the Kraus presentation (witness: input state on a factor labelled "in");
/// route via_duality minimizes entanglement over the dilation subspace
/// (witness: state in the env (x) out space). Warm starts, when present in
/// cfg, are interpreted as input states for either route.
MeasureResult s_min(const KrausChannel& ch, const OptimizerConfig& cfg,
                    Route route = Route::via_duality);

/// Re-evaluate the witness of a result: E of the pure witness across `cut`,
/// or the weighted average of member entanglements for an ensemble witness.
double reevaluate_witness(const MeasureResult& result, const BipartiteCut& cut);

std::string quantity_name(Quantity q);
Quantity quantity_from_name(const std::string& name);
std::string route_name(Route r);
Route route_from_name(const std::string& name);

}  // namespace emlab
