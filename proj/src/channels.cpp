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

#include "emlab/channels.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "emlab/random.hpp"

namespace emlab {

KrausChannel::KrausChannel(int in_dim, int out_dim, std::vector<Matrix> ops)
    : in_dim_(in_dim), out_dim_(out_dim) {
  if (in_dim < 1 || out_dim < 1) {
    throw ValidationError("KrausChannel: dimensions must be >= 1");
  }
  for (auto& op : ops) {
    if (op.rows() != out_dim || op.cols() != in_dim) {
      throw ValidationError("KrausChannel: operator shape must be out x in");
    }
    if (op.norm() > kKrausTrimTol) ops_.push_back(std::move(op));
  }
  if (ops_.empty()) {
    throw ValidationError("KrausChannel: no Kraus operators left after trim");
  }
  Matrix sum = Matrix::Zero(in_dim, in_dim);
  for (const auto& op : ops_) sum += op.adjoint() * op;
  const double dev = max_abs_diff(sum, Matrix::Identity(in_dim, in_dim));
  if (dev > kCompletenessTol) {
    throw ValidationError(
        "KrausChannel: completeness violated, residual norm " +
        std::to_string(dev));
  }
}

Matrix KrausChannel::apply_raw(const Matrix& rho) const {
  if (rho.rows() != in_dim_ || rho.cols() != in_dim_) {
    throw ValidationError("KrausChannel::apply: input dimension mismatch");
  }
  Matrix out = Matrix::Zero(out_dim_, out_dim_);
  for (const auto& op : ops_) out += op * rho * op.adjoint();
  return out;
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
  Matrix out = apply_raw(rho.matrix());
  out = 0.5 * (out + Matrix(out.adjoint()));
  return DensityMatrix(FactoredSpace({{"out", out_dim_}}), std::move(out));
}

StinespringIsometry::StinespringIsometry(FactoredSpace space, Matrix isometry,
                                         std::string env_label)
    : space_(std::move(space)),
      isometry_(std::move(isometry)),
      env_label_(std::move(env_label)) {
  if (space_.factor_count() != 2) {
    throw ValidationError("StinespringIsometry: space needs exactly 2 factors");
  }
  space_.index_of(env_label_);
  if (isometry_.rows() != space_.total_dim()) {
    throw ValidationError("StinespringIsometry: row count mismatch");
  }
  if (isometry_.cols() < 1 || isometry_.cols() > isometry_.rows()) {
    throw ValidationError("StinespringIsometry: need 1 <= in_dim <= rows");
  }
  const Matrix gram = isometry_.adjoint() * isometry_;
  const double dev =
      max_abs_diff(gram, Matrix::Identity(in_dim(), in_dim()));
  if (dev > kOrthoTol) {
    throw ValidationError("StinespringIsometry: V^dag V != I (deviation " +
                          std::to_string(dev) + ")");
  }
}

const std::string& StinespringIsometry::out_label() const {
  const int env_pos = space_.index_of(env_label_);
  return space_.factor(1 - env_pos).label;
}

int StinespringIsometry::env_dim() const {
  return space_.factor(space_.index_of(env_label_)).dim;
}

int StinespringIsometry::out_dim() const {
  return space_.factor(space_.index_of(out_label())).dim;
}

Matrix StinespringIsometry::apply_raw(const Matrix& rho) const {
  const Matrix big = isometry_ * rho * isometry_.adjoint();
  return partial_trace_raw(big, space_, {out_label()});
}

StinespringIsometry stinespring(const KrausChannel& ch) {
  const int env = ch.kraus_count();
  const int out = ch.out_dim();
  Matrix v(env * out, ch.in_dim());
  for (int k = 0; k < env; ++k) {
    v.middleRows(k * out, out) = ch.kraus_ops()[k];
  }
  return StinespringIsometry(FactoredSpace({{"env", env}, {"out", out}}),
                             std::move(v), "env");
}

KrausChannel channel_from_isometry(const StinespringIsometry& v) {
  const int env = v.env_dim();
  const int out = v.out_dim();
  const int env_pos = v.space().index_of(v.env_label());
  std::vector<Matrix> ops;
  ops.reserve(env);
  for (int k = 0; k < env; ++k) {
    Matrix op(out, v.in_dim());
    for (int o = 0; o < out; ++o) {
      // Row of V for (env=k, out=o) under the slowest-first convention.
      const long row = (env_pos == 0) ? (static_cast<long>(k) * out + o)
                                      : (static_cast<long>(o) * env + k);
      op.row(o) = v.isometry().row(row);
    }
    ops.push_back(std::move(op));
  }
  return KrausChannel(v.in_dim(), out, std::move(ops));
}

Subspace dual_subspace(const StinespringIsometry& v) {
  return Subspace(v.space(), v.isometry());
}

KrausChannel channel_from_subspace(const Subspace& s,
                                   const std::string& traced_label) {
  if (s.space().factor_count() != 2) {
    throw ValidationError(
        "channel_from_subspace: subspace must live on two factors");
  }
  s.space().index_of(traced_label);
  StinespringIsometry v(s.space(), s.basis(), traced_label);
  return channel_from_isometry(v);
}

KrausChannel tensor_channels(const KrausChannel& a, const KrausChannel& b) {
  std::vector<Matrix> ops;
  ops.reserve(a.kraus_count() * b.kraus_count());
  for (const auto& x : a.kraus_ops()) {
    for (const auto& y : b.kraus_ops()) {
      ops.push_back(kron(x, y));
    }
  }
  return KrausChannel(a.in_dim() * b.in_dim(), a.out_dim() * b.out_dim(),
                      std::move(ops));
}

KrausChannel identity_channel(int d) {
  std::vector<Matrix> ops{Matrix::Identity(d, d)};
  return KrausChannel(d, d, std::move(ops));
}

namespace {

Matrix shift_op(int d) {
  Matrix x = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) x((j + 1) % d, j) = 1.0;
  return x;
}

Matrix clock_op(int d) {
  Matrix z = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / d;
    z(j, j) = Complex(std::cos(angle), std::sin(angle));
  }
  return z;
}

}  // namespace

KrausChannel depolarizing_channel(int d, double p) {
  if (d < 2) throw ValidationError("depolarizing_channel: need d >= 2");
  if (p < 0.0 || p > 1.0) {
    throw ValidationError("depolarizing_channel: need 0 <= p <= 1");
  }
  std::vector<Matrix> ops;
  if (d == 2) {
    Matrix x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;
    ops.push_back(std::sqrt(1.0 - 3.0 * p / 4.0) * Matrix::Identity(2, 2));
    ops.push_back(std::sqrt(p / 4.0) * x);
    ops.push_back(std::sqrt(p / 4.0) * y);
    ops.push_back(std::sqrt(p / 4.0) * z);
  } else {
    const Matrix x = shift_op(d);
    const Matrix z = clock_op(d);
    const double d2 = static_cast<double>(d) * d;
    for (int a = 0; a < d; ++a) {
      Matrix xa = Matrix::Identity(d, d);
      for (int r = 0; r < a; ++r) xa = x * xa;
      for (int b = 0; b < d; ++b) {
        Matrix zb = Matrix::Identity(d, d);
        for (int r = 0; r < b; ++r) zb = z * zb;
        const double w = (a == 0 && b == 0) ? 1.0 - p + p / d2 : p / d2;
        ops.push_back(std::sqrt(w) * xa * zb);
      }
    }
  }
  return KrausChannel(d, d, std::move(ops));
}

KrausChannel completely_depolarizing_channel(int d) {
  if (d < 2) {
    throw ValidationError("completely_depolarizing_channel: need d >= 2");
  }
  std::vector<Matrix> ops;
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Matrix op = Matrix::Zero(d, d);
      op(i, j) = w;
      ops.push_back(std::move(op));
    }
  }
  return KrausChannel(d, d, std::move(ops));
}

KrausChannel werner_holevo_channel(int d) {
  if (d < 2) throw ValidationError("werner_holevo_channel: need d >= 2");
  std::vector<Matrix> ops;
  const double norm = 1.0 / std::sqrt(static_cast<double>(d - 1));
  if (d == 3) {
    // Levi-Civita presentation: (A_k)_{l i} = eps_{i k l} / sqrt(2). Its
    // dilation V |i> = (1/sqrt 2) sum_{k l} eps_{i k l} |k>|l> spans the
    // antisymmetric subspace of C^3 (x) C^3 on the nose.
    auto eps = [](int i, int j, int k) -> double {
      if (i == j || j == k || i == k) return 0.0;
      return ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
    };
    for (int k = 0; k < 3; ++k) {
      Matrix op = Matrix::Zero(3, 3);
      for (int l = 0; l < 3; ++l) {
        for (int i = 0; i < 3; ++i) {
          op(l, i) = eps(i, k, l) * norm;
        }
      }
      ops.push_back(std::move(op));
    }
  } else {
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        Matrix op = Matrix::Zero(d, d);
        op(i, j) = norm;
        op(j, i) = -norm;
        ops.push_back(std::move(op));
      }
    }
  }
  return KrausChannel(d, d, std::move(ops));
}

KrausChannel random_isometry_channel(int in_dim, int env_dim, int out_dim,
                                     std::uint64_t seed) {
  if (in_dim < 1 || env_dim < 1 || out_dim < 1) {
    throw ValidationError("random_isometry_channel: dimensions must be >= 1");
  }
  if (env_dim * out_dim < in_dim) {
    throw ValidationError(
        "random_isometry_channel: env_dim * out_dim must be >= in_dim");
  }
  Rng rng(seed);
  Matrix v = haar_isometry(env_dim * out_dim, in_dim, rng);
  StinespringIsometry iso(FactoredSpace({{"env", env_dim}, {"out", out_dim}}),
                          std::move(v), "env");
  return channel_from_isometry(iso);
}

KrausChannel make_family(const ChannelFamilySpec& spec) {
  switch (spec.family) {
    case ChannelFamily::identity:
      return identity_channel(spec.d);
    case ChannelFamily::depolarizing:
      return depolarizing_channel(spec.d, spec.p);
    case ChannelFamily::werner_holevo:
      return werner_holevo_channel(spec.d);
    case ChannelFamily::completely_depolarizing:
      return completely_depolarizing_channel(spec.d);
    case ChannelFamily::random_isometry:
      return random_isometry_channel(spec.in_dim, spec.env_dim, spec.out_dim,
                                     spec.seed);
  }
  throw ValidationError("make_family: unknown family");
}

std::string family_name(ChannelFamily f) {
  switch (f) {
    case ChannelFamily::identity:
      return "identity";
    case ChannelFamily::depolarizing:
      return "depolarizing";
    case ChannelFamily::werner_holevo:
      return "werner_holevo";
    case ChannelFamily::completely_depolarizing:
      return "completely_depolarizing";
    case ChannelFamily::random_isometry:
      return "random_isometry";
  }
  throw ValidationError("family_name: unknown family");
}

ChannelFamily family_from_name(const std::string& name) {
  if (name == "identity") return ChannelFamily::identity;
  if (name == "depolarizing") return ChannelFamily::depolarizing;
  if (name == "werner_holevo") return ChannelFamily::werner_holevo;
  if (name == "completely_depolarizing") {
    return ChannelFamily::completely_depolarizing;
  }
  if (name == "random_isometry") return ChannelFamily::random_isometry;
  throw ValidationError("unknown channel family '" + name + "'");
}

}  // namespace emlab
