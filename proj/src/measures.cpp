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

#include "emlab/measures.hpp"

#include <cmath>
#include <utility>

namespace emlab {

namespace {

constexpr double kGradEigFloor = 1e-12;
constexpr double kLog2e = 1.4426950408889634;

OptimDiagnostics diagnostics_of(const OptimResult& r) {
  OptimDiagnostics d;
  d.converged = r.converged;
  d.best_restart_index = r.best_restart_index;
  d.iterations_per_restart = r.iterations_per_restart;
  d.best_grad_norm = r.best_grad_norm;
  return d;
}

}  // namespace

MeasureResult entanglement(const PureState& phi, const BipartiteCut& cut) {
  MeasureResult result;
  result.quantity = Quantity::E;
  result.value_bits = entanglement_entropy(phi, cut);
  result.witness = phi;
  result.route = Route::direct;
  return result;
}

MeasureResult e_m(const DensityMatrix& rho, const BipartiteCut& cut,
                  const OptimizerConfig& cfg) {
  validate_cut(rho.space(), cut);
  SphereProblem problem{support(rho), cut};
  OptimResult r = minimize_entanglement(problem, cfg);

  MeasureResult result;
  result.quantity = Quantity::Em;
  result.value_bits = r.value_bits;
  result.witness = std::move(r.witness);
  result.route = Route::direct;
  result.diagnostics = diagnostics_of(r);
  return result;
}

MeasureResult e_f(const DensityMatrix& rho, const BipartiteCut& cut,
                  const OptimizerConfig& cfg,
                  std::optional<Route> route_override) {
  validate_cut(rho.space(), cut);
  const bool two_qubit = is_two_qubit(rho, cut);
  Route route = route_override.value_or(two_qubit ? Route::closed_form
                                                  : Route::direct);
  if (route == Route::via_duality) {
    throw ValidationError("e_f: via_duality is a minimum-output-entropy route");
  }
  if (route == Route::closed_form && !two_qubit) {
    throw ValidationError("e_f: closed form requires a two-qubit state");
  }

  MeasureResult result;
  result.quantity = Quantity::Ef;
  result.route = route;
  if (route == Route::closed_form) {
    const std::vector<std::string> order{cut.side_a.front(),
                                         cut.side_b.front()};
    const DensityMatrix work =
        (rho.space().labels() == order) ? rho : regroup(rho, order);
    result.value_bits = ef_from_concurrence(concurrence(work.matrix()));
    result.witness = optimal_ef_ensemble(rho, cut);
  } else {
    OptimResult r = minimize_ef(rho, cut, cfg);
    result.value_bits = r.value_bits;
    result.witness = std::move(r.witness);
    result.diagnostics = diagnostics_of(r);
  }
  return result;
}

MeasureResult s_min(const KrausChannel& ch, const OptimizerConfig& cfg,
                    Route route) {
  if (route == Route::closed_form) {
    throw ValidationError("s_min: no closed-form route");
  }

  MeasureResult result;
  result.quantity = Quantity::Smin;
  result.route = route;

  if (route == Route::via_duality) {
    const StinespringIsometry v = stinespring(ch);
    SphereProblem problem{dual_subspace(v),
                          BipartiteCut{{v.env_label()}, {v.out_label()}}};
    OptimizerConfig lifted = cfg;
    lifted.warm_starts.clear();
    for (const auto& w : cfg.warm_starts) {
      if (w.dim() != ch.in_dim()) {
        throw ValidationError("s_min: warm start must be an input state");
      }
      lifted.warm_starts.emplace_back(v.space(),
                                      Vector(v.isometry() * w.vector()));
    }
    OptimResult r = minimize_entanglement(problem, lifted);
    result.value_bits = r.value_bits;
    result.witness = std::move(r.witness);
    result.diagnostics = diagnostics_of(r);
    return result;
  }

  // Direct route: minimize the output entropy through the Kraus presentation.
  const auto& ops = ch.kraus_ops();
  SphereObjective objective;
  objective.dim = ch.in_dim();
  objective.value = [&ops, &ch](const Vector& psi) {
    Matrix sigma = Matrix::Zero(ch.out_dim(), ch.out_dim());
    for (const auto& op : ops) {
      const Vector out = op * psi;
      sigma += out * out.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sigma,
                                                 Eigen::EigenvaluesOnly);
    return entropy_bits(solver.eigenvalues());
  };
  objective.gradient = [&ops, &ch](const Vector& psi) {
    Matrix sigma = Matrix::Zero(ch.out_dim(), ch.out_dim());
    std::vector<Vector> outs;
    outs.reserve(ops.size());
    for (const auto& op : ops) {
      outs.push_back(op * psi);
      sigma += outs.back() * outs.back().adjoint();
    }
    const EigSystem eig = hermitian_eig(sigma, 1e-6);
    Matrix g = Matrix::Zero(ch.out_dim(), ch.out_dim());
    for (Eigen::Index a = 0; a < eig.values.size(); ++a) {
      double lam = eig.values[a];
      if (lam < kGradEigFloor) lam = kGradEigFloor;
      g += (-std::log2(lam) - kLog2e) *
           (eig.vectors.col(a) * eig.vectors.col(a).adjoint());
    }
    Vector grad = Vector::Zero(psi.size());
    for (size_t k = 0; k < ops.size(); ++k) {
      grad += ops[k].adjoint() * (g * outs[k]);
    }
    return Vector(2.0 * grad);
  };

  std::vector<Vector> warm;
  for (const auto& w : cfg.warm_starts) {
    if (w.dim() != ch.in_dim()) {
      throw ValidationError("s_min: warm start must be an input state");
    }
    warm.push_back(w.vector());
  }

  SphereResult r = minimize_on_sphere(objective, cfg, warm);
  result.value_bits = r.value;
  result.witness =
      PureState(FactoredSpace({{"in", ch.in_dim()}}), std::move(r.coords));
  OptimDiagnostics d;
  d.converged = r.converged;
  d.best_restart_index = r.best_restart_index;
  d.iterations_per_restart = std::move(r.iterations_per_restart);
  d.best_grad_norm = r.best_grad_norm;
  result.diagnostics = std::move(d);
  return result;
}

double reevaluate_witness(const MeasureResult& result,
                          const BipartiteCut& cut) {
  if (std::holds_alternative<PureState>(result.witness)) {
    return entanglement_entropy(result.pure_witness(), cut);
  }
  double total = 0.0;
  for (const auto& mem : result.ensemble_witness().members) {
    total += mem.weight * entanglement_entropy(mem.state, cut);
  }
  return total;
}

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::E:
      return "E";
    case Quantity::Ef:
      return "Ef";
    case Quantity::Em:
      return "Em";
    case Quantity::Smin:
      return "Smin";
  }
  throw ValidationError("quantity_name: unknown quantity");
}

Quantity quantity_from_name(const std::string& name) {
  if (name == "E" || name == "e") return Quantity::E;
  if (name == "Ef" || name == "ef") return Quantity::Ef;
  if (name == "Em" || name == "em") return Quantity::Em;
  if (name == "Smin" || name == "smin") return Quantity::Smin;
  throw ValidationError("unknown quantity '" + name + "'");
}

std::string route_name(Route r) {
  switch (r) {
    case Route::direct:
      return "direct";
    case Route::via_duality:
      return "via_duality";
    case Route::closed_form:
      return "closed_form";
  }
  throw ValidationError("route_name: unknown route");
}

Route route_from_name(const std::string& name) {
  if (name == "direct") return Route::direct;
  if (name == "via_duality" || name == "duality") return Route::via_duality;
  if (name == "closed_form" || name == "closed-form") {
    return Route::closed_form;
  }
  throw ValidationError("unknown route '" + name + "'");
}

}  // namespace emlab
