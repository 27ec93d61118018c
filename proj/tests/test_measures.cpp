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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_util.hpp"

#include "emlab/measures.hpp"

using namespace emlab;
using namespace emlab::test;

namespace {

OptimizerConfig quick_cfg(std::uint64_t seed, int restarts = 16) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.master_seed = seed;
  return cfg;
}

const BipartiteCut kQubitCut{{"H1"}, {"H2"}};

DensityMatrix werner_state(double w) {
  const PureState bell = bell_phi_plus();
  return DensityMatrix(bell.space(),
                       w * (bell.vector() * bell.vector().adjoint()) +
                           (1.0 - w) * Matrix::Identity(4, 4) / 4.0);
}

}  // namespace

TEST_CASE("entanglement: Bell, product, and a biased Schmidt pair") {
  CHECK(entanglement(bell_phi_plus(), kQubitCut).value_bits ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK(entanglement(basis_state(two_qubits(), 2), kQubitCut).value_bits ==
        doctest::Approx(0.0));

  Vector v = Vector::Zero(4);
  v(0) = std::sqrt(0.25);
  v(3) = std::sqrt(0.75);
  const PureState biased(two_qubits(), v);
  CHECK(entanglement(biased, kQubitCut).value_bits ==
        doctest::Approx(0.8112781244591328).epsilon(1e-9));
}

TEST_CASE("e_m: pure states collapse to the entropy of entanglement") {
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const PureState psi = haar_pure_state(two_qubits(), rng);
    const MeasureResult em =
        e_m(psi.projector(), kQubitCut, quick_cfg(trial, 4));
    const double e = entanglement(psi, kQubitCut).value_bits;
    CHECK(em.value_bits == doctest::Approx(e).epsilon(1e-9));
  }
}

TEST_CASE("e_m: maximally mixed state contains product states") {
  const DensityMatrix mixed(two_qubits(), Matrix::Identity(4, 4) / 4.0);
  CHECK(e_m(mixed, kQubitCut, quick_cfg(7)).value_bits < 1e-9);
}

TEST_CASE("e_m: antisymmetric projector sits at one bit") {
  const DensityMatrix rho = uniform_mixture(antisymmetric_subspace(3));
  const MeasureResult em = e_m(rho, {{"H1"}, {"H2"}}, quick_cfg(9, 8));
  CHECK(em.value_bits == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(reevaluate_witness(em, {{"H1"}, {"H2"}}) ==
        doctest::Approx(em.value_bits).epsilon(1e-9));
}

TEST_CASE("e_f: closed form on Bell, the mixed Werner family, and I/4") {
  const MeasureResult bell =
      e_f(bell_phi_plus().projector(), kQubitCut, quick_cfg(1));
  CHECK(bell.route == Route::closed_form);
  CHECK(bell.value_bits == doctest::Approx(1.0).epsilon(1e-9));

  const MeasureResult mixed = e_f(
      DensityMatrix(two_qubits(), Matrix::Identity(4, 4) / 4.0), kQubitCut,
      quick_cfg(2));
  CHECK(mixed.value_bits == doctest::Approx(0.0));

  CHECK(e_f(werner_state(0.8), kQubitCut, quick_cfg(3)).value_bits ==
        doctest::Approx(0.5918574071706773).epsilon(1e-9));
  CHECK(e_f(werner_state(0.5), kQubitCut, quick_cfg(4)).value_bits ==
        doctest::Approx(0.11761887377091781).epsilon(1e-9));
  // At or below w = 1/3 the Werner state is separable.
  CHECK(e_f(werner_state(0.3), kQubitCut, quick_cfg(5)).value_bits ==
        doctest::Approx(0.0));
}

TEST_CASE("e_f: closed-form witness is a certified optimal ensemble") {
  Rng rng(11);
  std::vector<DensityMatrix> states{werner_state(0.8), werner_state(0.3),
                                    werner_state(1.0 / 3.0)};
  for (int trial = 0; trial < 5; ++trial) {
    states.push_back(random_density(two_qubits(), 4, rng));
  }
  states.push_back(random_density(two_qubits(), 2, rng));
  states.push_back(random_density(two_qubits(), 3, rng));

  for (size_t i = 0; i < states.size(); ++i) {
    const MeasureResult r = e_f(states[i], kQubitCut, quick_cfg(20 + i));
    const Ensemble& ens = r.ensemble_witness();
    double wsum = 0.0;
    for (const auto& m : ens.members) wsum += m.weight;
    CHECK(std::abs(wsum - 1.0) < 1e-10);
    CHECK(max_abs_diff(ens.mixture(), states[i].matrix()) < 1e-9);
    CHECK(std::abs(reevaluate_witness(r, kQubitCut) - r.value_bits) < 1e-9);
  }
}

TEST_CASE("e_f: optimizer route agrees with the closed form") {
  Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = random_density(two_qubits(), 4, rng);
    const MeasureResult closed = e_f(rho, kQubitCut, quick_cfg(trial));
    const MeasureResult direct =
        e_f(rho, kQubitCut, quick_cfg(trial, 24), Route::direct);
    CHECK(direct.route == Route::direct);
    CHECK(std::abs(closed.value_bits - direct.value_bits) < 1e-3);
  }
}

TEST_CASE("e_f: route validation") {
  const DensityMatrix rho(FactoredSpace({{"A", 3}, {"B", 2}}),
                          Matrix::Identity(6, 6) / 6.0);
  CHECK_THROWS_AS(
      e_f(rho, {{"A"}, {"B"}}, quick_cfg(0), Route::closed_form),
      ValidationError);
  CHECK_THROWS_AS(
      e_f(rho, {{"A"}, {"B"}}, quick_cfg(0), Route::via_duality),
      ValidationError);
  // Non-two-qubit inputs run the ensemble route by default.
  const MeasureResult r = e_f(rho, {{"A"}, {"B"}}, quick_cfg(1, 8));
  CHECK(r.route == Route::direct);
  CHECK(r.value_bits < 1e-6);  // maximally mixed is separable
}

TEST_CASE("s_min: unitary channel reaches zero on both routes") {
  Rng rng(17);
  std::vector<Matrix> ops{haar_unitary(3, rng)};
  const KrausChannel unitary(3, 3, ops);
  CHECK(s_min(unitary, quick_cfg(1, 4), Route::direct).value_bits < 1e-9);
  CHECK(s_min(unitary, quick_cfg(1, 4), Route::via_duality).value_bits <
        1e-9);
}

TEST_CASE("s_min: completely depolarizing qubit channel is one bit") {
  const MeasureResult r =
      s_min(completely_depolarizing_channel(2), quick_cfg(2, 4));
  CHECK(r.value_bits == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("s_min: depolarizing p = 0.5 hits the Bloch-sphere value") {
  const KrausChannel dep = depolarizing_channel(2, 0.5);
  const MeasureResult direct = s_min(dep, quick_cfg(3, 8), Route::direct);
  const MeasureResult duality =
      s_min(dep, quick_cfg(3, 8), Route::via_duality);
  CHECK(direct.value_bits ==
        doctest::Approx(0.8112781244591328).epsilon(1e-6));
  CHECK(duality.value_bits ==
        doctest::Approx(0.8112781244591328).epsilon(1e-6));
}

TEST_CASE("s_min: route agreement on random channels") {
  for (int trial = 0; trial < 6; ++trial) {
    const KrausChannel ch = random_isometry_channel(
        2 + trial % 2, 2 + trial % 2, 3, 400 + trial);
    const double a = s_min(ch, quick_cfg(trial, 12), Route::direct).value_bits;
    const double b =
        s_min(ch, quick_cfg(trial, 12), Route::via_duality).value_bits;
    CHECK(std::abs(a - b) < 1e-6);
  }
}

TEST_CASE("s_min witnesses certify their values") {
  const KrausChannel ch = random_isometry_channel(3, 2, 2, 55);
  const MeasureResult direct = s_min(ch, quick_cfg(5, 8), Route::direct);
  const Vector psi = direct.pure_witness().vector();
  CHECK(entropy_bits(ch.apply_raw(psi * psi.adjoint())) ==
        doctest::Approx(direct.value_bits).epsilon(1e-9));

  const MeasureResult dual = s_min(ch, quick_cfg(5, 8), Route::via_duality);
  CHECK(reevaluate_witness(dual, {{"env"}, {"out"}}) ==
        doctest::Approx(dual.value_bits).epsilon(1e-9));
}

TEST_CASE("hierarchy: e_m <= e_f <= eigen-ensemble average") {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const int rank = 2 + static_cast<int>(rng.next_u64() % 3);
    const DensityMatrix rho = random_density(two_qubits(), rank, rng);
    const double em = e_m(rho, kQubitCut, quick_cfg(trial)).value_bits;
    const double ef = e_f(rho, kQubitCut, quick_cfg(trial)).value_bits;

    const EigSystem eig = hermitian_eig(rho.matrix());
    double eigen_avg = 0.0;
    for (int i = 0; i < 4; ++i) {
      if (eig.values[i] <= 1e-12) continue;
      eigen_avg += eig.values[i] *
                   entanglement_entropy(
                       PureState(rho.space(), eig.vectors.col(i)), kQubitCut);
    }
    CHECK(em <= ef + 1e-9);
    CHECK(ef <= eigen_avg + 1e-9);
  }
}

TEST_CASE("pure-state collapse: e_m = e_f = E") {
  Rng rng(29);
  const PureState psi = haar_pure_state(two_qubits(), rng);
  const double e = entanglement(psi, kQubitCut).value_bits;
  CHECK(std::abs(e_m(psi.projector(), kQubitCut, quick_cfg(1)).value_bits -
                 e) < 1e-9);
  CHECK(std::abs(e_f(psi.projector(), kQubitCut, quick_cfg(1)).value_bits -
                 e) < 1e-9);
}

TEST_CASE("e_m is invariant under local unitaries") {
  Rng rng(31);
  for (int trial = 0; trial < 3; ++trial) {
    const DensityMatrix rho = uniform_mixture(
        haar_subspace(two_qubits(), 2, rng));
    const Matrix u = kron(haar_unitary(2, rng), haar_unitary(2, rng));
    const DensityMatrix rotated(rho.space(),
                                u * rho.matrix() * u.adjoint());
    const double before = e_m(rho, kQubitCut, quick_cfg(trial)).value_bits;
    const double after = e_m(rotated, kQubitCut, quick_cfg(trial)).value_bits;
    CHECK(std::abs(before - after) < 2e-4);
  }
}

TEST_CASE("e_m is invariant under local pure ancillas") {
  Rng rng(37);
  const DensityMatrix rho =
      uniform_mixture(haar_subspace(two_qubits(), 2, rng));
  const double base = e_m(rho, kQubitCut, quick_cfg(3)).value_bits;

  const FactoredSpace anc_a({{"A'", 2}});
  const FactoredSpace anc_b({{"B'", 2}});
  const DensityMatrix padded = tensor(
      tensor(rho, basis_state(anc_a, 0).projector()),
      basis_state(anc_b, 0).projector());
  const double grown =
      e_m(padded, {{"H1", "A'"}, {"H2", "B'"}}, quick_cfg(3)).value_bits;
  CHECK(std::abs(base - grown) < 2e-4);
}
