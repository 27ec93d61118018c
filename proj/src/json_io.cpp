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

#include "emlab/json_io.hpp"

#include <ctime>
#include <fstream>

namespace emlab {

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Matrix& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back(to_json(m(i, j)));
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const FactoredSpace& space) {
  Json factors = Json::array();
  for (const auto& f : space.factors()) {
    factors.push_back(Json{{"label", f.label}, {"dim", f.dim}});
  }
  return Json{{"factors", factors}};
}

Json to_json(const BipartiteCut& cut) {
  return Json{{"side_a", cut.side_a}, {"side_b", cut.side_b}};
}

Json to_json(const DensityMatrix& rho) {
  return Json{{"kind", "density_matrix"},
              {"space", to_json(rho.space())},
              {"matrix", to_json(rho.matrix())}};
}

Json to_json(const PureState& phi) {
  return Json{{"kind", "pure_state"},
              {"space", to_json(phi.space())},
              {"vector", to_json(phi.vector())}};
}

Json to_json(const Subspace& s) {
  return Json{{"kind", "subspace"},
              {"space", to_json(s.space())},
              {"basis", to_json(s.basis())}};
}

Json to_json(const Ensemble& e) {
  Json members = Json::array();
  for (const auto& m : e.members) {
    members.push_back(Json{{"weight", m.weight}, {"state", to_json(m.state)}});
  }
  return Json{{"kind", "ensemble"}, {"members", members}};
}

Json to_json(const Witness& witness) {
  if (std::holds_alternative<PureState>(witness)) {
    return to_json(std::get<PureState>(witness));
  }
  return to_json(std::get<Ensemble>(witness));
}

Json to_json(const KrausChannel& ch) {
  Json ops = Json::array();
  for (const auto& op : ch.kraus_ops()) ops.push_back(to_json(op));
  return Json{{"kind", "kraus"},
              {"in_dim", ch.in_dim()},
              {"out_dim", ch.out_dim()},
              {"ops", ops}};
}

Json to_json(const ChannelFamilySpec& spec) {
  Json params;
  switch (spec.family) {
    case ChannelFamily::depolarizing:
      params = Json{{"d", spec.d}, {"p", spec.p}};
      break;
    case ChannelFamily::random_isometry:
      params = Json{{"in", spec.in_dim},
                    {"env", spec.env_dim},
                    {"out", spec.out_dim}};
      break;
    default:
      params = Json{{"d", spec.d}};
      break;
  }
  return Json{{"kind", "family"},
              {"family", family_name(spec.family)},
              {"params", params},
              {"seed", spec.seed}};
}

Json to_json(const StinespringIsometry& v) {
  return Json{{"kind", "stinespring"},
              {"space", to_json(v.space())},
              {"isometry", to_json(v.isometry())},
              {"env_label", v.env_label()}};
}

Json to_json(const OptimizerConfig& cfg) {
  Json warm = Json::array();
  for (const auto& w : cfg.warm_starts) warm.push_back(to_json(w));
  return Json{{"restarts", cfg.restarts},
              {"max_iters", cfg.max_iters},
              {"grad_tol", cfg.grad_tol},
              {"seed", cfg.master_seed},
              {"warm_starts", warm},
              {"jobs", cfg.jobs},
              {"ef_ensemble_size", cfg.ef_ensemble_size}};
}

Json to_json(const OptimDiagnostics& d) {
  return Json{{"converged", d.converged},
              {"best_restart_index", d.best_restart_index},
              {"iterations_per_restart", d.iterations_per_restart},
              {"best_grad_norm", d.best_grad_norm}};
}

Json to_json(const MeasureResult& r) {
  return Json{{"quantity", quantity_name(r.quantity)},
              {"value_bits", r.value_bits},
              {"route", route_name(r.route)},
              {"witness", to_json(r.witness)},
              {"diagnostics", to_json(r.diagnostics)}};
}

Json to_json(const GapReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back(Json{{"role", w.role}, {"witness", to_json(w.witness)}});
  }
  return Json{{"check_id", check_name(r.check_id)},
              {"lhs_bits", r.lhs_bits},
              {"rhs_terms_bits", r.rhs_terms_bits},
              {"gap_bits", r.gap_bits},
              {"witnesses", witnesses},
              {"cfg", to_json(r.cfg)},
              {"seeds", r.seeds},
              {"wall_time_seconds", r.wall_time_seconds},
              {"counterexample_flag", r.counterexample_flag},
              {"notes", r.notes}};
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing JSON field '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ValidationError("complex scalar must be a two-element array");
  }
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Matrix matrix_from_json(const Json& j) {
  const int rows = require(j, "rows").get<int>();
  const int cols = require(j, "cols").get<int>();
  const Json& entries = require(j, "entries");
  if (rows < 1 || cols < 1) {
    throw ValidationError("matrix dimensions must be positive");
  }
  if (!entries.is_array() ||
      entries.size() != static_cast<size_t>(rows) * cols) {
    throw ValidationError("matrix entries length must equal rows * cols");
  }
  Matrix m(rows, cols);
  size_t idx = 0;
  for (int i = 0; i < rows; ++i) {
    for (int c = 0; c < cols; ++c) {
      m(i, c) = complex_from_json(entries.at(idx++));
    }
  }
  return m;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("vector must be an array");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j.at(i));
  return v;
}

FactoredSpace space_from_json(const Json& j) {
  const Json& factors = require(j, "factors");
  if (!factors.is_array()) {
    throw ValidationError("space factors must be an array");
  }
  std::vector<Factor> fs;
  for (const auto& f : factors) {
    fs.push_back({require(f, "label").get<std::string>(),
                  require(f, "dim").get<int>()});
  }
  return FactoredSpace(std::move(fs));
}

BipartiteCut cut_from_json(const Json& j) {
  return {require(j, "side_a").get<std::vector<std::string>>(),
          require(j, "side_b").get<std::vector<std::string>>()};
}

DensityMatrix density_from_json(const Json& j) {
  return DensityMatrix(space_from_json(require(j, "space")),
                       matrix_from_json(require(j, "matrix")));
}

PureState pure_state_from_json(const Json& j) {
  return PureState(space_from_json(require(j, "space")),
                   vector_from_json(require(j, "vector")));
}

Subspace subspace_from_json(const Json& j) {
  return Subspace(space_from_json(require(j, "space")),
                  matrix_from_json(require(j, "basis")));
}

Ensemble ensemble_from_json(const Json& j) {
  Ensemble e;
  for (const auto& m : require(j, "members")) {
    e.members.push_back({require(m, "weight").get<double>(),
                         pure_state_from_json(require(m, "state"))});
  }
  return e;
}

ChannelFamilySpec family_spec_from_json(const Json& j) {
  ChannelFamilySpec spec;
  spec.family = family_from_name(require(j, "family").get<std::string>());
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  switch (spec.family) {
    case ChannelFamily::depolarizing:
      spec.d = require(params, "d").get<int>();
      spec.p = require(params, "p").get<double>();
      break;
    case ChannelFamily::random_isometry:
      spec.in_dim = require(params, "in").get<int>();
      spec.env_dim = require(params, "env").get<int>();
      spec.out_dim = require(params, "out").get<int>();
      break;
    default:
      spec.d = require(params, "d").get<int>();
      break;
  }
  return spec;
}

KrausChannel channel_from_json(const Json& j) {
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "family") {
    return make_family(family_spec_from_json(j));
  }
  if (kind != "kraus") {
    throw ValidationError("channel kind must be 'kraus' or 'family'");
  }
  const int in = require(j, "in_dim").get<int>();
  const int out = require(j, "out_dim").get<int>();
  std::vector<Matrix> ops;
  for (const auto& op : require(j, "ops")) {
    ops.push_back(matrix_from_json(op));
  }
  return KrausChannel(in, out, std::move(ops));
}

OptimizerConfig optimizer_config_from_json(const Json& j) {
  OptimizerConfig cfg;
  if (j.contains("restarts")) cfg.restarts = j.at("restarts").get<int>();
  if (j.contains("max_iters")) cfg.max_iters = j.at("max_iters").get<int>();
  if (j.contains("grad_tol")) cfg.grad_tol = j.at("grad_tol").get<double>();
  if (j.contains("seed")) cfg.master_seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
  if (j.contains("ef_ensemble_size")) {
    cfg.ef_ensemble_size = j.at("ef_ensemble_size").get<int>();
  }
  if (j.contains("warm_starts")) {
    for (const auto& w : j.at("warm_starts")) {
      cfg.warm_starts.push_back(pure_state_from_json(w));
    }
  }
  if (cfg.restarts < 1 || cfg.max_iters < 1 || cfg.grad_tol <= 0.0) {
    throw ValidationError("optimizer config out of range");
  }
  return cfg;
}

std::variant<DensityMatrix, PureState> state_from_json(const Json& j) {
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "density_matrix") return density_from_json(j);
  if (kind == "pure_state") return pure_state_from_json(j);
  throw ValidationError("state kind must be 'density_matrix' or 'pure_state'");
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
}

Json to_json(const RunManifest& m) {
  return Json{{"command", m.command},
              {"inputs", m.inputs},
              {"cfg", to_json(m.cfg)},
              {"master_seed", m.master_seed},
              {"tool_version", m.tool_version},
              {"timestamp", m.timestamp}};
}

std::string current_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace emlab
