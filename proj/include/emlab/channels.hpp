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
#include <optional>
#include <string>
#include <vector>

#include "emlab/states.hpp"

namespace emlab {

inline constexpr double kCompletenessTol = 1e-10;
inline constexpr double kKrausTrimTol = 1e-12;

/// CPTP map presented by Kraus operators. Operators with Frobenius norm
/// <= kKrausTrimTol are dropped at construction; the completeness relation
/// sum A^dag A = I is validated to kCompletenessTol.
class KrausChannel {
 public:
  KrausChannel(int in_dim, int out_dim, std::vector<Matrix> ops);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<Matrix>& kraus_ops() const { return ops_; }
  int kraus_count() const { return static_cast<int>(ops_.size()); }

  /// sum_k A_k rho A_k^dag on a raw matrix.
  Matrix apply_raw(const Matrix& rho) const;
  /// Same, wrapped as a density matrix on a single factor labelled "out".
  DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  int in_dim_;
  int out_dim_;
  std::vector<Matrix> ops_;
};

/// Isometric dilation V : C^in -> env (x) out; tracing out the env factor of
/// V rho V^dag recovers the channel.
class StinespringIsometry {
 public:
  StinespringIsometry(FactoredSpace space, Matrix isometry,
                      std::string env_label);

  const FactoredSpace& space() const { return space_; }
  const Matrix& isometry() const { return isometry_; }
  const std::string& env_label() const { return env_label_; }
  const std::string& out_label() const;
  int env_dim() const;
  int out_dim() const;
  int in_dim() const { return static_cast<int>(isometry_.cols()); }

  /// tr_env(V rho V^dag), as a raw out_dim x out_dim matrix.
  Matrix apply_raw(const Matrix& rho) const;

 private:
  FactoredSpace space_;  // exactly two factors
  Matrix isometry_;
  std::string env_label_;
};

/// Canonical dilation of a channel: env is the first factor (labelled "env",
/// dimension = number of Kraus operators), the output factor is "out".
StinespringIsometry stinespring(const KrausChannel& ch);

/// Kraus operators A_k = (<k|_env (x) I_out) V.
KrausChannel channel_from_isometry(const StinespringIsometry& v);

/// The image of the isometry as a subspace of env (x) out.
Subspace dual_subspace(const StinespringIsometry& v);

/// Reverse direction of the correspondence: the channel whose Stinespring
/// image is the given two-factor subspace, tracing out `traced_label`.
KrausChannel channel_from_subspace(const Subspace& s,
                                   const std::string& traced_label);

/// Kraus set {A_i (x) B_j}.
KrausChannel tensor_channels(const KrausChannel& a, const KrausChannel& b);

// --- built-in families ------------------------------------------------------

KrausChannel identity_channel(int d);
/// rho -> (1-p) rho + p I/d. Pauli presentation for d = 2, shift/clock
/// (Heisenberg-Weyl) presentation for d > 2.
KrausChannel depolarizing_channel(int d, double p);
/// rho -> I/d for every input.
KrausChannel completely_depolarizing_channel(int d);
/// rho -> (I tr(rho) - rho^T) / (d - 1). For d = 3 the Kraus presentation is
/// chosen so the canonical dilation subspace is exactly the antisymmetric
/// subspace of C^3 (x) C^3.
KrausChannel werner_holevo_channel(int d);
/// Channel induced by a Haar-random isometry C^in -> C^env (x) C^out,
/// deterministic per seed.
KrausChannel random_isometry_channel(int in_dim, int env_dim, int out_dim,
                                     std::uint64_t seed);

enum class ChannelFamily {
  identity,
  depolarizing,
  werner_holevo,
  completely_depolarizing,
  random_isometry,
};

struct ChannelFamilySpec {
  ChannelFamily family = ChannelFamily::identity;
  int d = 2;           // identity / depolarizing / werner_holevo / c.dep.
  double p = 0.0;      // depolarizing
  int in_dim = 2;      // random_isometry
  int env_dim = 2;     // random_isometry
  int out_dim = 2;     // random_isometry
  std::uint64_t seed = 0;
};

KrausChannel make_family(const ChannelFamilySpec& spec);

std::string family_name(ChannelFamily f);
ChannelFamily family_from_name(const std::string& name);

}  // namespace emlab
