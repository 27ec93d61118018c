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

#include <string>

#include "emlab/harness.hpp"

using namespace emlab;
using namespace emlab::test;

namespace {

OptimizerConfig quick_cfg(std::uint64_t seed, int restarts = 12) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.master_seed = seed;
  return cfg;
}

double note_value(const GapReport& rep, const std::string& key) {
  for (const auto& n : rep.notes) {
    if (n.rfind(key + "=", 0) == 0) {
      return std::stod(n.substr(key.size() + 1));
    }
  }
  FAIL("missing note ", key);
  return 0.0;
}

}  // namespace

TEST_CASE("em_add: pure product inputs have zero gap") {
  Rng rng(3);
  const PureState pa = haar_pure_state(two_qubits(), rng);
  const PureState pb = haar_pure_state(two_qubits(), rng);
  const StatePair a{pa.projector(), {{"H1"}, {"H2"}}};
  const StatePair b{pb.projector(), {{"H1"}, {"H2"}}};
  const GapReport rep = check_em_additivity(a, b, quick_cfg(1, 4));
  CHECK(std::abs(rep.gap_bits) < 1e-9);
  CHECK(rep.lhs_bits ==
        doctest::Approx(rep.rhs_terms_bits[0] + rep.rhs_terms_bits[1])
            .epsilon(1e-9));
  CHECK_FALSE(rep.counterexample_flag);
  CHECK(rep.seeds.size() == 3);
}

TEST_CASE("em_add: a zero term reduces the product to the other factor") {
  Rng rng(5);
  const StatePair mixed{
      DensityMatrix(two_qubits(), Matrix::Identity(4, 4) / 4.0),
      {{"H1"}, {"H2"}}};
  const StatePair proj{uniform_mixture(haar_subspace(two_qubits(), 2, rng)),
                       {{"H1"}, {"H2"}}};
  const GapReport rep = check_em_additivity(mixed, proj, quick_cfg(2, 8));
  CHECK(rep.rhs_terms_bits[0] < 1e-9);
  CHECK(std::abs(rep.lhs_bits - rep.rhs_terms_bits[1]) < 1e-6);
}

TEST_CASE("em_add: constructive gap never exceeds the warm-start bound") {
  Rng rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    const StatePair a{uniform_mixture(haar_subspace(two_qubits(), 2, rng)),
                      {{"H1"}, {"H2"}}};
    const StatePair b{uniform_mixture(haar_subspace(two_qubits(), 2, rng)),
                      {{"H1"}, {"H2"}}};
    const GapReport rep = check_em_additivity(a, b, quick_cfg(trial, 8));
    CHECK(rep.gap_bits <= 1e-9);
    CHECK_FALSE(rep.counterexample_flag);
  }
}

TEST_CASE("em_superadd: product pure state splits exactly") {
  Rng rng(11);
  const PureState pa = haar_pure_state(two_qubits(), rng);
  const PureState pb =
      haar_pure_state(FactoredSpace({{"H1'", 2}, {"H2'", 2}}), rng);
  // Factor order (H1, H2, H1', H2').
  const DensityMatrix rho = tensor(pa, pb).projector();
  const GapReport rep = check_em_superadd(rho, quick_cfg(3, 6));
  CHECK(std::abs(rep.gap_bits) < 1e-6);
  CHECK(note_value(rep, "support_containment_residual0") < 1e-8);
  CHECK(note_value(rep, "support_containment_residual1") < 1e-8);
}

TEST_CASE("em_superadd: haar pure state reports a signed gap with witnesses") {
  Rng rng(13);
  const FactoredSpace space(
      {{"H1", 2}, {"H2", 2}, {"H1'", 2}, {"H2'", 2}});
  const DensityMatrix rho = haar_pure_state(space, rng).projector();
  const GapReport rep = check_em_superadd(rho, quick_cfg(4, 8));
  CHECK(rep.rhs_terms_bits.size() == 2);
  CHECK(rep.witnesses.size() == 3);
  // lhs witness realizes the lhs value (whole cut).
  const PureState& w = std::get<PureState>(rep.witnesses[0].witness);
  CHECK(entanglement_entropy(w, {{"H1", "H1'"}, {"H2", "H2'"}}) ==
        doctest::Approx(rep.lhs_bits).epsilon(1e-9));
  CHECK(note_value(rep, "support_containment_residual0") < 1e-8);
}

TEST_CASE("em_superadd rejects wrong factor counts") {
  const DensityMatrix rho(two_qubits(), Matrix::Identity(4, 4) / 4.0);
  CHECK_THROWS_AS(check_em_superadd(rho, quick_cfg(0)), ValidationError);
}

TEST_CASE("smin_add: unitary tensor anything contributes nothing") {
  Rng rng(17);
  std::vector<Matrix> u{haar_unitary(2, rng)};
  const KrausChannel unitary(2, 2, u);
  const KrausChannel dep = depolarizing_channel(2, 0.5);
  const GapReport rep = check_smin_additivity(unitary, dep, quick_cfg(5, 8));
  CHECK(rep.rhs_terms_bits[0] < 1e-9);
  CHECK(std::abs(rep.lhs_bits - rep.rhs_terms_bits[1]) < 1e-6);
  CHECK(rep.gap_bits <= 1e-9);

  const GapReport ids = check_smin_additivity(identity_channel(2),
                                              identity_channel(2),
                                              quick_cfg(6, 4));
  CHECK(ids.lhs_bits < 1e-9);
}

TEST_CASE("smin_add: depolarizing pair lands on twice the single copy") {
  const KrausChannel dep = depolarizing_channel(2, 0.5);
  const GapReport rep = check_smin_additivity(dep, dep, quick_cfg(7, 8));
  CHECK(rep.lhs_bits == doctest::Approx(1.6225562489182657).epsilon(1e-3));
  CHECK(rep.gap_bits <= 1e-9);
  CHECK_FALSE(rep.counterexample_flag);
}

TEST_CASE("eof superadditivity: crossed Bell pairs give a two-bit gap") {
  // Bell pairs between (H1, H2') and (H1', H2): both reductions onto
  // (H1, H2) and (H1', H2') are maximally mixed, hence separable, while the
  // whole state is pure with two bits across (H1,H1')|(H2,H2').
  const PureState crossed =
      regroup(tensor(bell_phi_plus("H1", "H2'"), bell_phi_plus("H1'", "H2")),
              {"H1", "H2", "H1'", "H2'"});
  const GapReport rep = check_eof_superadd(crossed.projector(),
                                           quick_cfg(8, 6));
  CHECK(rep.lhs_bits == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(std::abs(rep.rhs_terms_bits[0]) < 1e-3);
  CHECK(std::abs(rep.rhs_terms_bits[1]) < 1e-3);
  CHECK(rep.gap_bits == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("eof additivity: pure pairs and separable pairs") {
  Rng rng(23);
  const PureState pa = haar_pure_state(two_qubits(), rng);
  const PureState pb = haar_pure_state(two_qubits(), rng);
  const GapReport pure_rep = check_eof_add(
      {pa.projector(), {{"H1"}, {"H2"}}}, {pb.projector(), {{"H1"}, {"H2"}}},
      quick_cfg(9, 6));
  CHECK(std::abs(pure_rep.gap_bits) < 1e-3);

  const DensityMatrix sep(two_qubits(), Matrix::Identity(4, 4) / 4.0);
  const GapReport sep_rep =
      check_eof_add({sep, {{"H1"}, {"H2"}}}, {sep, {{"H1"}, {"H2"}}},
                    quick_cfg(10, 6));
  CHECK(std::abs(sep_rep.lhs_bits) < 1e-3);
  CHECK(std::abs(sep_rep.rhs_terms_bits[0]) < 1e-3);
}

TEST_CASE("eof checks enforce the dimension cap") {
  const FactoredSpace big({{"A", 3}, {"B", 3}});
  const DensityMatrix rho(big, Matrix::Identity(9, 9) / 9.0);
  CHECK_THROWS_AS(
      check_eof_add({rho, {{"A"}, {"B"}}}, {rho, {{"A"}, {"B"}}},
                    quick_cfg(0)),
      ValidationError);
}

TEST_CASE("duality: unitary channel, Werner-Holevo, and random isometries") {
  Rng rng(29);
  std::vector<Matrix> u{haar_unitary(3, rng)};
  const GapReport unit_rep =
      duality_crosscheck(KrausChannel(3, 3, u), quick_cfg(11, 6));
  CHECK(std::abs(unit_rep.lhs_bits) < 1e-6);
  CHECK(std::abs(unit_rep.rhs_terms_bits[0]) < 1e-6);

  const GapReport wh = duality_crosscheck(werner_holevo_channel(3),
                                          quick_cfg(12, 8));
  CHECK(wh.lhs_bits == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(wh.rhs_terms_bits[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::abs(wh.gap_bits) < 1e-4);

  for (int trial = 0; trial < 4; ++trial) {
    const KrausChannel ch = random_isometry_channel(2, 2, 3, 600 + trial);
    const GapReport rep = duality_crosscheck(ch, quick_cfg(trial, 12));
    CHECK(std::abs(rep.gap_bits) < 1e-6);
  }
}

TEST_CASE("duality: tensor pair version") {
  const KrausChannel a = random_isometry_channel(2, 2, 2, 41);
  const KrausChannel b = random_isometry_channel(2, 2, 2, 42);
  const GapReport rep = duality_crosscheck(a, b, quick_cfg(13, 10));
  CHECK(std::abs(rep.gap_bits) < 1e-6);
}

TEST_CASE("convexity: mixture never exceeds the better component") {
  Rng rng(31);
  for (int trial = 0; trial < 3; ++trial) {
    const DensityMatrix r1 =
        uniform_mixture(haar_subspace(two_qubits(), 2, rng));
    const DensityMatrix r2 =
        uniform_mixture(haar_subspace(two_qubits(), 2, rng));
    const double p = 0.1 + 0.2 * trial;
    const GapReport rep =
        check_convexity(r1, r2, p, {{"H1"}, {"H2"}}, quick_cfg(trial, 8));
    CHECK(rep.gap_bits <= 1e-4);
  }
  CHECK_THROWS_AS(
      check_convexity(
          DensityMatrix(two_qubits(), Matrix::Identity(4, 4) / 4.0),
          DensityMatrix(two_qubits(), Matrix::Identity(4, 4) / 4.0), 1.0,
          {{"H1"}, {"H2"}}, quick_cfg(0)),
      ValidationError);
}

TEST_CASE("discontinuity: epsilon support jump against the Bell point") {
  const GapReport rep = discontinuity_demo(1e-3, quick_cfg(14, 8));
  CHECK(rep.lhs_bits <= 1e-6);
  CHECK(rep.rhs_terms_bits[0] == doctest::Approx(1.0).epsilon(1e-9));
  // || rho_eps - rho_0 ||_tr / 2 = eps / sqrt(2) for this family.
  CHECK(note_value(rep, "trace_distance") ==
        doctest::Approx(1e-3 / std::sqrt(2.0)).epsilon(1e-6));

  const GapReport zero = discontinuity_demo(0.0, quick_cfg(15, 4));
  CHECK(zero.lhs_bits == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(discontinuity_demo(1.5, quick_cfg(0)), ValidationError);
}

TEST_CASE("campaign: single trial reproduces the direct check bit-for-bit") {
  CampaignSpec spec;
  spec.check_id = CheckId::duality;
  spec.dims = {2, 2, 2};
  spec.trials = 1;
  spec.master_seed = 99;
  spec.cfg = quick_cfg(0, 6);
  const CampaignResult res = run_campaign(spec);
  REQUIRE(res.reports.size() == 1);

  const std::uint64_t trial_seed = campaign_trial_seed(spec, 0);
  OptimizerConfig cfg = spec.cfg;
  cfg.master_seed = trial_seed;
  const KrausChannel ch = random_isometry_channel(
      2, 2, 2, derive_seed(trial_seed, 101));
  const GapReport direct = duality_crosscheck(ch, cfg);
  CHECK(res.reports[0].second.gap_bits == direct.gap_bits);
  CHECK(res.reports[0].second.lhs_bits == direct.lhs_bits);
}

TEST_CASE("campaign: reruns and parallel schedules reproduce every gap") {
  CampaignSpec spec;
  spec.check_id = CheckId::pure_superadd;
  spec.dims = {2, 2, 2, 2};
  spec.trials = 6;
  spec.master_seed = 7;
  spec.cfg = quick_cfg(0, 6);

  const CampaignResult a = run_campaign(spec);
  const CampaignResult b = run_campaign(spec);
  CampaignSpec par = spec;
  par.jobs = 4;
  const CampaignResult c = run_campaign(par);

  REQUIRE(a.reports.size() == 6);
  REQUIRE(b.reports.size() == 6);
  REQUIRE(c.reports.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(a.reports[i].second.gap_bits == b.reports[i].second.gap_bits);
    CHECK(std::abs(a.reports[i].second.gap_bits -
                   c.reports[i].second.gap_bits) <= 1e-12);
  }
}

TEST_CASE("campaign: failures are recorded, not fatal") {
  CampaignSpec spec;
  spec.check_id = CheckId::eof_add;
  spec.dims = {3, 3, 3, 3};  // exceeds the dimension cap
  spec.trials = 3;
  spec.master_seed = 1;
  spec.cfg = quick_cfg(0, 2);
  const CampaignResult res = run_campaign(spec);
  CHECK(res.reports.empty());
  CHECK(res.failures.size() == 3);
}

TEST_CASE("campaign: subspace sampler controls the support size") {
  CampaignSpec spec;
  spec.check_id = CheckId::em_add;
  spec.sampler = Sampler::haar_subspace;
  spec.subspace_dim = 2;
  spec.dims = {2, 2, 2, 2};
  spec.trials = 2;
  spec.master_seed = 3;
  spec.cfg = quick_cfg(0, 6);
  const CampaignResult res = run_campaign(spec);
  REQUIRE(res.reports.size() == 2);
  for (const auto& [t, rep] : res.reports) {
    CHECK(rep.gap_bits <= 1e-9);
  }
}

TEST_CASE("check and sampler names round-trip") {
  for (CheckId id :
       {CheckId::em_add, CheckId::em_superadd, CheckId::smin_add,
        CheckId::eof_add, CheckId::eof_superadd, CheckId::duality,
        CheckId::pure_superadd, CheckId::convexity, CheckId::discontinuity}) {
    CHECK(check_from_name(check_name(id)) == id);
  }
  CHECK_THROWS_AS(check_from_name("nope"), ValidationError);
  for (Sampler s : {Sampler::auto_default, Sampler::haar_state,
                    Sampler::haar_subspace, Sampler::family}) {
    CHECK(sampler_from_name(sampler_name(s)) == s);
  }
}
