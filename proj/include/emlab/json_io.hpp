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

#include <json.hpp>

#include "emlab/harness.hpp"

namespace emlab {

using Json = nlohmann::json;

// Complex scalars are two-element arrays [re, im]; matrices are
// {"rows", "cols", "entries"} with row-major entries; states carry a "kind"
// tag ("density_matrix" / "pure_state" / "subspace" / "ensemble"); channels
// are {"kind": "kraus", ...} or {"kind": "family", ...}.

Json to_json(const Complex& z);
Json to_json(const Matrix& m);
Json to_json(const Vector& v);
Json to_json(const FactoredSpace& space);
Json to_json(const BipartiteCut& cut);
Json to_json(const DensityMatrix& rho);
Json to_json(const PureState& phi);
Json to_json(const Subspace& s);
Json to_json(const Ensemble& e);
Json to_json(const Witness& witness);
Json to_json(const KrausChannel& ch);
Json to_json(const ChannelFamilySpec& spec);
Json to_json(const StinespringIsometry& v);
Json to_json(const OptimizerConfig& cfg);
Json to_json(const OptimDiagnostics& d);
Json to_json(const MeasureResult& r);
Json to_json(const GapReport& r);

Complex complex_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
Vector vector_from_json(const Json& j);
FactoredSpace space_from_json(const Json& j);
BipartiteCut cut_from_json(const Json& j);
DensityMatrix density_from_json(const Json& j);
PureState pure_state_from_json(const Json& j);
Subspace subspace_from_json(const Json& j);
Ensemble ensemble_from_json(const Json& j);
KrausChannel channel_from_json(const Json& j);
ChannelFamilySpec family_spec_from_json(const Json& j);
OptimizerConfig optimizer_config_from_json(const Json& j);

/// Any state object by kind tag; pure states may be promoted to density
/// matrices by the caller when needed.
std::variant<DensityMatrix, PureState> state_from_json(const Json& j);

/// Parse a JSON file; IoError on filesystem problems, ValidationError on
/// malformed content.
Json load_json_file(const std::string& path);

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  OptimizerConfig cfg;
  std::uint64_t master_seed = 0;
  std::string tool_version;
  std::string timestamp;  // ISO 8601, the only field that varies across reruns
};

Json to_json(const RunManifest& m);
std::string current_timestamp();

}  // namespace emlab
