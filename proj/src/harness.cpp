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

#include "emlab/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "emlab/parallel.hpp"
#include "emlab/random.hpp"

namespace emlab {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

OptimizerConfig with_seed(const OptimizerConfig& cfg, std::uint64_t seed) {
  OptimizerConfig out = cfg;
  out.master_seed = seed;
  out.warm_starts.clear();
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Combined cut after tensoring a and b (b's labels already disjoint).
BipartiteCut combine_cuts(const BipartiteCut& a, const BipartiteCut& b) {
  BipartiteCut cut = a;
  cut.side_a.insert(cut.side_a.end(), b.side_a.begin(), b.side_a.end());
  cut.side_b.insert(cut.side_b.end(), b.side_b.begin(), b.side_b.end());
  return cut;
}

bool labels_collide(const FactoredSpace& a, const FactoredSpace& b) {
  for (const auto& f : b.factors()) {
    if (a.has(f.label)) return true;
  }
  return false;
}

BipartiteCut suffixed(const BipartiteCut& cut, const std::string& suffix) {
  BipartiteCut out = cut;
  for (auto& l : out.side_a) l += suffix;
  for (auto& l : out.side_b) l += suffix;
  return out;
}

// Positional four-factor views used by the superadditivity checks.
struct FourFactorView {
  std::vector<std::string> h;  // labels of H1, H2, H1', H2'
  BipartiteCut whole_cut() const { return {{h[0], h[2]}, {h[1], h[3]}}; }
  BipartiteCut first_cut() const { return {{h[0]}, {h[1]}}; }
  BipartiteCut second_cut() const { return {{h[2]}, {h[3]}}; }
};

FourFactorView four_factors(const DensityMatrix& rho) {
  if (rho.space().factor_count() != 4) {
    throw ValidationError("expected a state on exactly four factors");
  }
  return FourFactorView{rho.space().labels()};
}

// max entrywise |(I - P_big) P_small|: ~0 iff the small subspace is
// contained in the big one.
double containment_residual(const Subspace& small, const Subspace& big) {
  const Matrix p_small = small.projector();
  const Matrix p_big = big.projector();
  const Matrix leak =
      (Matrix::Identity(p_big.rows(), p_big.cols()) - p_big) * p_small;
  return leak.cwiseAbs().maxCoeff();
}

}  // namespace

std::string check_name(CheckId id) {
  switch (id) {
    case CheckId::em_add:
      return "em_add";
    case CheckId::em_superadd:
      return "em_superadd";
    case CheckId::smin_add:
      return "smin_add";
    case CheckId::eof_add:
      return "eof_add";
    case CheckId::eof_superadd:
      return "eof_superadd";
    case CheckId::duality:
      return "duality";
    case CheckId::pure_superadd:
      return "pure_superadd";
    case CheckId::convexity:
      return "convexity";
    case CheckId::discontinuity:
      return "discontinuity";
  }
  throw ValidationError("check_name: unknown check");
}

CheckId check_from_name(const std::string& name) {
  if (name == "em_add") return CheckId::em_add;
  if (name == "em_superadd") return CheckId::em_superadd;
  if (name == "smin_add") return CheckId::smin_add;
  if (name == "eof_add") return CheckId::eof_add;
  if (name == "eof_superadd") return CheckId::eof_superadd;
  if (name == "duality") return CheckId::duality;
  if (name == "pure_superadd") return CheckId::pure_superadd;
  if (name == "convexity") return CheckId::convexity;
  if (name == "discontinuity") return CheckId::discontinuity;
  throw ValidationError("unknown check id '" + name + "'");
}

GapReport check_em_additivity(const StatePair& a, const StatePair& b,
                              const OptimizerConfig& cfg) {
  Stopwatch watch;
  validate_cut(a.rho.space(), a.cut);
  validate_cut(b.rho.space(), b.cut);

  const std::uint64_t seed_a = derive_seed(cfg.master_seed, 1);
  const std::uint64_t seed_b = derive_seed(cfg.master_seed, 2);
  const std::uint64_t seed_lhs = derive_seed(cfg.master_seed, 3);

  const MeasureResult ra = e_m(a.rho, a.cut, with_seed(cfg, seed_a));
  const MeasureResult rb = e_m(b.rho, b.cut, with_seed(cfg, seed_b));

  const std::string suffix = labels_collide(a.rho.space(), b.rho.space())
                                 ? std::string("'")
                                 : std::string();
  const DensityMatrix rho_b =
      suffix.empty() ? b.rho : relabel(b.rho, suffix);
  const BipartiteCut cut_b = suffix.empty() ? b.cut : suffixed(b.cut, suffix);
  const PureState wb = suffix.empty() ? rb.pure_witness()
                                      : relabel(rb.pure_witness(), suffix);

  const DensityMatrix product = tensor(a.rho, rho_b);
  const BipartiteCut cut = combine_cuts(a.cut, cut_b);

  OptimizerConfig lhs_cfg = with_seed(cfg, seed_lhs);
  lhs_cfg.warm_starts.push_back(tensor(ra.pure_witness(), wb));
  const MeasureResult lhs = e_m(product, cut, lhs_cfg);

  GapReport report;
  report.check_id = CheckId::em_add;
  report.lhs_bits = lhs.value_bits;
  report.rhs_terms_bits = {ra.value_bits, rb.value_bits};
  report.gap_bits = report.lhs_bits - ra.value_bits - rb.value_bits;
  report.counterexample_flag = report.gap_bits < kCounterexampleGap;
  report.witnesses.push_back({"lhs", lhs.witness});
  report.witnesses.push_back({"rhs0", ra.witness});
  report.witnesses.push_back({"rhs1", rb.witness});
  report.cfg = cfg;
  report.seeds = {seed_a, seed_b, seed_lhs};
  report.wall_time_seconds = watch.seconds();
  return report;
}

GapReport check_em_superadd(const DensityMatrix& rho,
                            const OptimizerConfig& cfg) {
  Stopwatch watch;
  const FourFactorView view = four_factors(rho);

  const std::uint64_t seed_lhs = derive_seed(cfg.master_seed, 1);
  const std::uint64_t seed_r0 = derive_seed(cfg.master_seed, 2);
  const std::uint64_t seed_r1 = derive_seed(cfg.master_seed, 3);

  const MeasureResult lhs = e_m(rho, view.whole_cut(), with_seed(cfg, seed_lhs));

  const DensityMatrix red_first = partial_trace(rho, {view.h[0], view.h[1]});
  const DensityMatrix red_second = partial_trace(rho, {view.h[2], view.h[3]});
  const MeasureResult r0 =
      e_m(red_first, view.first_cut(), with_seed(cfg, seed_r0));
  const MeasureResult r1 =
      e_m(red_second, view.second_cut(), with_seed(cfg, seed_r1));

  GapReport report;
  report.check_id = CheckId::em_superadd;
  report.lhs_bits = lhs.value_bits;
  report.rhs_terms_bits = {r0.value_bits, r1.value_bits};
  report.gap_bits = report.lhs_bits - r0.value_bits - r1.value_bits;
  report.witnesses.push_back({"lhs", lhs.witness});
  report.witnesses.push_back({"rhs0", r0.witness});
  report.witnesses.push_back({"rhs1", r1.witness});
  report.cfg = cfg;
  report.seeds = {seed_lhs, seed_r0, seed_r1};

  // Consistency: the reductions of the lhs witness must live inside the
  // supports of the corresponding reductions of rho.
  const DensityMatrix w_proj = lhs.pure_witness().projector();
  const double res0 = containment_residual(
      support(partial_trace(w_proj, {view.h[0], view.h[1]})),
      support(red_first));
  const double res1 = containment_residual(
      support(partial_trace(w_proj, {view.h[2], view.h[3]})),
      support(red_second));
  report.notes.push_back("support_containment_residual0=" + fmt(res0));
  report.notes.push_back("support_containment_residual1=" + fmt(res1));

  report.wall_time_seconds = watch.seconds();
  return report;
}

GapReport check_smin_additivity(const KrausChannel& a, const KrausChannel& b,
                                const OptimizerConfig& cfg) {
  Stopwatch watch;
  const std::uint64_t seed_a = derive_seed(cfg.master_seed, 1);
  const std::uint64_t seed_b = derive_seed(cfg.master_seed, 2);
  const std::uint64_t seed_lhs = derive_seed(cfg.master_seed, 3);

  const MeasureResult ra = s_min(a, with_seed(cfg, seed_a), Route::direct);
  const MeasureResult rb = s_min(b, with_seed(cfg, seed_b), Route::direct);

  const KrausChannel product = tensor_channels(a, b);
  OptimizerConfig lhs_cfg = with_seed(cfg, seed_lhs);
  lhs_cfg.warm_starts.emplace_back(
      FactoredSpace({{"in", product.in_dim()}}),
      kron(ra.pure_witness().vector(), rb.pure_witness().vector()));
  const MeasureResult lhs = s_min(product, lhs_cfg, Route::direct);

  GapReport report;
  report.check_id = CheckId::smin_add;
  report.lhs_bits = lhs.value_bits;
  report.rhs_terms_bits = {ra.value_bits, rb.value_bits};
  report.gap_bits = report.lhs_bits - ra.value_bits - rb.value_bits;
  report.counterexample_flag = report.gap_bits < kCounterexampleGap;
  report.witnesses.push_back({"lhs", lhs.witness});
  report.witnesses.push_back({"rhs0", ra.witness});
  report.witnesses.push_back({"rhs1", rb.witness});
  report.cfg = cfg;
  report.seeds = {seed_a, seed_b, seed_lhs};
  report.wall_time_seconds = watch.seconds();
  return report;
}

namespace {

void enforce_ef_cap(long total_dim, int dim_cap) {
  if (total_dim > dim_cap) {
    throw ValidationError(
        "entanglement-of-formation check exceeds the dimension cap (" +
        std::to_string(total_dim) + " > " + std::to_string(dim_cap) + ")");
  }
}

}  // namespace

GapReport check_eof_add(const StatePair& a, const StatePair& b,
                        const OptimizerConfig& cfg, int dim_cap) {
  Stopwatch watch;
  validate_cut(a.rho.space(), a.cut);
  validate_cut(b.rho.space(), b.cut);
  enforce_ef_cap(static_cast<long>(a.rho.dim()) * b.rho.dim(), dim_cap);

  const std::uint64_t seed_a = derive_seed(cfg.master_seed, 1);
  const std::uint64_t seed_b = derive_seed(cfg.master_seed, 2);
  const std::uint64_t seed_lhs = derive_seed(cfg.master_seed, 3);

  const MeasureResult ra = e_f(a.rho, a.cut, with_seed(cfg, seed_a));
  const MeasureResult rb = e_f(b.rho, b.cut, with_seed(cfg, seed_b));

  const std::string suffix = labels_collide(a.rho.space(), b.rho.space())
                                 ? std::string("'")
                                 : std::string();
  const DensityMatrix rho_b = suffix.empty() ? b.rho : relabel(b.rho, suffix);
  const BipartiteCut cut_b = suffix.empty() ? b.cut : suffixed(b.cut, suffix);

  const DensityMatrix product = tensor(a.rho, rho_b);
  const MeasureResult lhs =
      e_f(product, combine_cuts(a.cut, cut_b), with_seed(cfg, seed_lhs));

  GapReport report;
  report.check_id = CheckId::eof_add;
  report.lhs_bits = lhs.value_bits;
  report.rhs_terms_bits = {ra.value_bits, rb.value_bits};
  report.gap_bits = report.lhs_bits - ra.value_bits - rb.value_bits;
  report.witnesses.push_back({"lhs", lhs.witness});
  report.witnesses.push_back({"rhs0", ra.witness});
  report.witnesses.push_back({"rhs1", rb.witness});
  report.cfg = cfg;
  report.seeds = {seed_a, seed_b, seed_lhs};
  report.wall_time_seconds = watch.seconds();
  return report;
}

GapReport check_eof_superadd(const DensityMatrix& rho,
                             const OptimizerConfig& cfg, int dim_cap) {
  Stopwatch watch;
  const FourFactorView view = four_factors(rho);
  enforce_ef_cap(rho.dim(), dim_cap);

  const std::uint64_t seed_lhs = derive_seed(cfg.master_seed, 1);
  const std::uint64_t seed_r0 = derive_seed(cfg.master_seed, 2);
  const std::uint64_t seed_r1 = derive_seed(cfg.master_seed, 3);

  const MeasureResult lhs = e_f(rho, view.whole_cut(), with_seed(cfg, seed_lhs));
  const MeasureResult r0 = e_f(partial_trace(rho, {view.h[0], view.h[1]}),
                               view.first_cut(), with_seed(cfg, seed_r0));
  const MeasureResult r1 = e_f(partial_trace(rho, {view.h[2], view.h[3]}),
                               view.second_cut(), with_seed(cfg, seed_r1));

  GapReport report;
  report.check_id = CheckId::eof_superadd;
  report.lhs_bits = lhs.value_bits;
  report.rhs_terms_bits = {r0.value_bits, r1.value_bits};
  report.gap_bits = report.lhs_bits - r0.value_bits - r1.value_bits;
  report.witnesses.push_back({"lhs", lhs.witness});
  report.witnesses.push_back({"rhs0", r0.witness});
  report.witnesses.push_back({"rhs1", r1.witness});
  report.cfg = cfg;
  report.seeds = {seed_lhs, seed_r0, seed_r1};
  report.wall_time_seconds = watch.seconds();
  return report;
}

GapReport duality_crosscheck(const KrausChannel& ch,
                             const OptimizerConfig& cfg) {
  Stopwatch watch;
  const std::uint64_t seed_em = derive_seed(cfg.master_seed, 1);
  const std::uint64_t seed_smin = derive_seed(cfg.master_seed, 2);

  const StinespringIsometry v = stinespring(ch);
  const DensityMatrix rho_k = uniform_mixture(dual_subspace(v));
  const BipartiteCut cut{{v.env_label()}, {v.out_label()}};

  const MeasureResult lhs = e_m(rho_k, cut, with_seed(cfg, seed_em));
  const MeasureResult rhs = s_min(ch, with_seed(cfg, seed_smin), Route::direct);

  GapReport report;
  report.check_id = CheckId::duality;
  report.lhs_bits = lhs.value_bits;
  report.rhs_terms_bits = {rhs.value_bits};
  report.gap_bits = report.lhs_bits - rhs.value_bits;
  report.witnesses.push_back({"lhs", lhs.witness});
  report.witnesses.push_back({"rhs0", rhs.witness});
  report.cfg = cfg;
  report.seeds = {seed_em, seed_smin};
  report.wall_time_seconds = watch.seconds();
  return report;
}

GapReport duality_crosscheck(const KrausChannel& a, const KrausChannel& b,
                             const OptimizerConfig& cfg) {
  Stopwatch watch;
  const std::uint64_t seed_em = derive_seed(cfg.master_seed, 1);
  const std::uint64_t seed_smin = derive_seed(cfg.master_seed, 2);

  const DensityMatrix rho_a = uniform_mixture(dual_subspace(stinespring(a)));
  const DensityMatrix rho_b = relabel(
      uniform_mixture(dual_subspace(stinespring(b))), "'");
  const DensityMatrix product = tensor(rho_a, rho_b);
  const BipartiteCut cut{{"env", "env'"}, {"out", "out'"}};

  const MeasureResult lhs = e_m(product, cut, with_seed(cfg, seed_em));
  const MeasureResult rhs = s_min(tensor_channels(a, b),
                                  with_seed(cfg, seed_smin), Route::direct);

  GapReport report;
  report.check_id = CheckId::duality;
  report.lhs_bits = lhs.value_bits;
  report.rhs_terms_bits = {rhs.value_bits};
  report.gap_bits = report.lhs_bits - rhs.value_bits;
  report.witnesses.push_back({"lhs", lhs.witness});
  report.witnesses.push_back({"rhs0", rhs.witness});
  report.cfg = cfg;
  report.seeds = {seed_em, seed_smin};
  report.notes.push_back("tensor_pair");
  report.wall_time_seconds = watch.seconds();
  return report;
}

GapReport check_convexity(const DensityMatrix& rho1, const DensityMatrix& rho2,
                          double p, const BipartiteCut& cut,
                          const OptimizerConfig& cfg) {
  Stopwatch watch;
  if (!(p > 0.0 && p < 1.0)) {
    throw ValidationError("check_convexity: need 0 < p < 1");
  }
  if (rho1.space() != rho2.space()) {
    throw ValidationError("check_convexity: states live on different spaces");
  }
  validate_cut(rho1.space(), cut);

  const std::uint64_t seed_1 = derive_seed(cfg.master_seed, 1);
  const std::uint64_t seed_2 = derive_seed(cfg.master_seed, 2);
  const std::uint64_t seed_mix = derive_seed(cfg.master_seed, 3);

  const MeasureResult r1 = e_m(rho1, cut, with_seed(cfg, seed_1));
  const MeasureResult r2 = e_m(rho2, cut, with_seed(cfg, seed_2));
  const MeasureResult& better = (r1.value_bits <= r2.value_bits) ? r1 : r2;

  const DensityMatrix mixture(
      rho1.space(), p * rho1.matrix() + (1.0 - p) * rho2.matrix());
  OptimizerConfig mix_cfg = with_seed(cfg, seed_mix);
  mix_cfg.warm_starts.push_back(better.pure_witness());
  const MeasureResult lhs = e_m(mixture, cut, mix_cfg);

  GapReport report;
  report.check_id = CheckId::convexity;
  report.lhs_bits = lhs.value_bits;
  report.rhs_terms_bits = {std::min(r1.value_bits, r2.value_bits)};
  report.gap_bits = report.lhs_bits - report.rhs_terms_bits[0];
  report.witnesses.push_back({"lhs", lhs.witness});
  report.witnesses.push_back({"rhs0", r1.witness});
  report.witnesses.push_back({"rhs1", r2.witness});
  report.cfg = cfg;
  report.seeds = {seed_1, seed_2, seed_mix};
  report.notes.push_back("p=" + fmt(p));
  report.wall_time_seconds = watch.seconds();
  return report;
}

GapReport discontinuity_demo(double epsilon, const OptimizerConfig& cfg) {
  Stopwatch watch;
  if (epsilon < 0.0 || epsilon >= 1.0) {
    throw ValidationError("discontinuity_demo: need 0 <= epsilon < 1");
  }
  const PureState bell = bell_phi_plus();
  const DensityMatrix rho0 = bell.projector();
  Matrix zero_proj = Matrix::Zero(4, 4);
  zero_proj(0, 0) = 1.0;
  const DensityMatrix rho_eps(
      bell.space(), (1.0 - epsilon) * rho0.matrix() + epsilon * zero_proj);
  const BipartiteCut cut{{"H1"}, {"H2"}};

  const std::uint64_t seed_eps = derive_seed(cfg.master_seed, 1);
  const std::uint64_t seed_0 = derive_seed(cfg.master_seed, 2);
  const MeasureResult lhs = e_m(rho_eps, cut, with_seed(cfg, seed_eps));
  const MeasureResult rhs = e_m(rho0, cut, with_seed(cfg, seed_0));

  GapReport report;
  report.check_id = CheckId::discontinuity;
  report.lhs_bits = lhs.value_bits;
  report.rhs_terms_bits = {rhs.value_bits};
  report.gap_bits = report.lhs_bits - rhs.value_bits;
  report.witnesses.push_back({"lhs", lhs.witness});
  report.witnesses.push_back({"rhs0", rhs.witness});
  report.cfg = cfg;
  report.seeds = {seed_eps, seed_0};
  report.notes.push_back("epsilon=" + fmt(epsilon));
  report.notes.push_back("trace_distance=" +
                         fmt(trace_distance(rho_eps, rho0)));
  report.wall_time_seconds = watch.seconds();
  return report;
}

// --- campaigns ---------------------------------------------------------------

std::string sampler_name(Sampler s) {
  switch (s) {
    case Sampler::auto_default:
      return "auto";
    case Sampler::haar_state:
      return "haar_state";
    case Sampler::haar_subspace:
      return "haar_subspace";
    case Sampler::family:
      return "family";
  }
  throw ValidationError("sampler_name: unknown sampler");
}

Sampler sampler_from_name(const std::string& name) {
  if (name == "auto") return Sampler::auto_default;
  if (name == "haar_state") return Sampler::haar_state;
  if (name == "haar_subspace") return Sampler::haar_subspace;
  if (name == "family") return Sampler::family;
  throw ValidationError("unknown sampler '" + name + "'");
}

std::uint64_t campaign_trial_seed(const CampaignSpec& spec, int t) {
  return derive_seed(spec.master_seed, static_cast<std::uint64_t>(t));
}

namespace {

FactoredSpace space_from_dims(const std::vector<int>& dims, int first = 1) {
  std::vector<Factor> fs;
  for (size_t i = 0; i < dims.size(); ++i) {
    fs.push_back({"H" + std::to_string(first + static_cast<int>(i)), dims[i]});
  }
  return FactoredSpace(std::move(fs));
}

DensityMatrix sample_state(const CampaignSpec& spec, const FactoredSpace& space,
                           std::uint64_t seed) {
  Rng rng(seed);
  if (spec.sampler == Sampler::haar_subspace) {
    int k = spec.subspace_dim > 0 ? spec.subspace_dim
                                  : (space.total_dim() + 1) / 2;
    if (k > space.total_dim()) {
      throw ValidationError("campaign: subspace_dim exceeds total dimension");
    }
    return uniform_mixture(haar_subspace(space, k, rng));
  }
  return random_density(space, space.total_dim(), rng);
}

KrausChannel sample_channel(const CampaignSpec& spec, std::uint64_t seed,
                            const std::optional<ChannelFamilySpec>& family) {
  if (spec.sampler == Sampler::family) {
    if (!family.has_value()) {
      throw ValidationError("campaign: family sampler needs a family spec");
    }
    ChannelFamilySpec fam = *family;
    if (fam.family == ChannelFamily::random_isometry) fam.seed = seed;
    return make_family(fam);
  }
  if (spec.dims.size() != 3) {
    throw ValidationError(
        "campaign: channel checks need dims = [in, env, out]");
  }
  return random_isometry_channel(spec.dims[0], spec.dims[1], spec.dims[2],
                                 seed);
}

GapReport run_trial(const CampaignSpec& spec, int t) {
  const std::uint64_t trial_seed = campaign_trial_seed(spec, t);
  OptimizerConfig cfg = spec.cfg;
  cfg.master_seed = trial_seed;

  switch (spec.check_id) {
    case CheckId::pure_superadd: {
      if (spec.dims.size() != 4) {
        throw ValidationError("pure_superadd campaign needs four dims");
      }
      const FactoredSpace space = space_from_dims(spec.dims);
      Rng rng(derive_seed(trial_seed, 101));
      return check_em_superadd(haar_pure_state(space, rng).projector(), cfg);
    }
    case CheckId::em_superadd: {
      if (spec.dims.size() != 4) {
        throw ValidationError("em_superadd campaign needs four dims");
      }
      const FactoredSpace space = space_from_dims(spec.dims);
      return check_em_superadd(
          sample_state(spec, space, derive_seed(trial_seed, 101)), cfg);
    }
    case CheckId::eof_superadd: {
      if (spec.dims.size() != 4) {
        throw ValidationError("eof_superadd campaign needs four dims");
      }
      const FactoredSpace space = space_from_dims(spec.dims);
      return check_eof_superadd(
          sample_state(spec, space, derive_seed(trial_seed, 101)), cfg,
          spec.ef_dim_cap);
    }
    case CheckId::em_add:
    case CheckId::eof_add: {
      if (spec.dims.size() != 4) {
        throw ValidationError("additivity campaigns need four dims");
      }
      const FactoredSpace sa = space_from_dims({spec.dims[0], spec.dims[1]}, 1);
      const FactoredSpace sb = space_from_dims({spec.dims[2], spec.dims[3]}, 3);
      StatePair a{sample_state(spec, sa, derive_seed(trial_seed, 101)),
                  {{sa.factor(0).label}, {sa.factor(1).label}}};
      StatePair b{sample_state(spec, sb, derive_seed(trial_seed, 102)),
                  {{sb.factor(0).label}, {sb.factor(1).label}}};
      return spec.check_id == CheckId::em_add
                 ? check_em_additivity(a, b, cfg)
                 : check_eof_add(a, b, cfg, spec.ef_dim_cap);
    }
    case CheckId::smin_add: {
      const KrausChannel a =
          sample_channel(spec, derive_seed(trial_seed, 101), spec.family_a);
      const KrausChannel b = sample_channel(
          spec, derive_seed(trial_seed, 102),
          spec.family_b.has_value() ? spec.family_b : spec.family_a);
      return check_smin_additivity(a, b, cfg);
    }
    case CheckId::duality: {
      const KrausChannel ch =
          sample_channel(spec, derive_seed(trial_seed, 101), spec.family_a);
      return duality_crosscheck(ch, cfg);
    }
    case CheckId::convexity: {
      if (spec.dims.size() != 2) {
        throw ValidationError("convexity campaign needs two dims");
      }
      const FactoredSpace space = space_from_dims(spec.dims);
      const DensityMatrix r1 =
          sample_state(spec, space, derive_seed(trial_seed, 101));
      const DensityMatrix r2 =
          sample_state(spec, space, derive_seed(trial_seed, 102));
      Rng prng(derive_seed(trial_seed, 103));
      const double p = 0.1 + 0.8 * prng.uniform();
      return check_convexity(
          r1, r2, p, {{space.factor(0).label}, {space.factor(1).label}}, cfg);
    }
    case CheckId::discontinuity:
      return discontinuity_demo(spec.epsilon, cfg);
  }
  throw ValidationError("run_campaign: unknown check");
}

}  // namespace

void run_campaign_streaming(
    const CampaignSpec& spec,
    const std::function<void(const TrialOutcome&)>& sink) {
  if (spec.trials < 1) {
    throw ValidationError("run_campaign: trials must be >= 1");
  }
  const int n = spec.trials;
  std::vector<TrialOutcome> slots(n);
  std::vector<bool> done(n, false);
  std::mutex mutex;
  std::condition_variable cv;
  std::atomic<int> next{0};

  auto work = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= n) return;
      TrialOutcome outcome;
      outcome.trial = t;
      outcome.seed = campaign_trial_seed(spec, t);
      try {
        outcome.report = run_trial(spec, t);
      } catch (const std::exception& e) {
        outcome.error = e.what();
      }
      {
        std::lock_guard<std::mutex> lock(mutex);
        slots[t] = std::move(outcome);
        done[t] = true;
      }
      cv.notify_all();
    }
  };

  const int workers = std::max(1, std::min(spec.jobs, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);

  // Emit strictly in trial order so files are schedule-independent.
  for (int t = 0; t < n; ++t) {
    std::unique_lock<std::mutex> lock(mutex);
    cv.wait(lock, [&] { return done[t]; });
    const TrialOutcome outcome = slots[t];
    lock.unlock();
    sink(outcome);
  }
  for (auto& th : pool) th.join();
}

CampaignResult run_campaign(const CampaignSpec& spec) {
  CampaignResult result;
  double sum = 0.0;
  run_campaign_streaming(spec, [&](const TrialOutcome& outcome) {
    if (outcome.error.has_value()) {
      result.failures.push_back({outcome.trial, *outcome.error});
      return;
    }
    const GapReport& rep = *outcome.report;
    if (result.reports.empty()) {
      result.min_gap = result.max_gap = rep.gap_bits;
    } else {
      result.min_gap = std::min(result.min_gap, rep.gap_bits);
      result.max_gap = std::max(result.max_gap, rep.gap_bits);
    }
    sum += rep.gap_bits;
    if (rep.counterexample_flag) ++result.flagged;
    result.reports.emplace_back(outcome.trial, rep);
  });
  if (!result.reports.empty()) {
    result.mean_gap = sum / static_cast<double>(result.reports.size());
  }
  return result;
}

}  // namespace emlab
