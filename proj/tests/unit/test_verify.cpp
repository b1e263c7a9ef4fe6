#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "dspsrl/core/errors.hpp"
#include "dspsrl/environments/riverswim.hpp"
#include "dspsrl/harness/experiment.hpp"
#include "dspsrl/verify/concentration.hpp"
#include "dspsrl/verify/delta.hpp"
#include "dspsrl/verify/sampling_identity.hpp"
#include "dspsrl/verify/poi_checks.hpp"
#include "dspsrl/verify/suite.hpp"

using namespace dspsrl;

namespace {

PoiModel one_row_model(double p) {
  // every row is (p, rest spread evenly) over 4 POIs
  std::vector<double> passive;
  for (int s = 0; s < 4; ++s) {
    passive.push_back(p);
    for (int k = 0; k < 3; ++k) passive.push_back((1.0 - p) / 3.0);
  }
  return PoiModel(4, passive, {1.0, 2.0}, 0.05);
}

double bernoulli_kl(double a, double b) {
  return a * std::log(a / b) + (1 - a) * std::log((1 - a) / (1 - b));
}

std::vector<EpisodeLog> ds_runs(const ExperimentConfig& base, Step horizon, std::size_t seeds) {
  ExperimentConfig cfg = base;
  cfg.agents = {"ds_psrl"};
  cfg.horizon = horizon;
  cfg.seeds = seeds;
  cfg.true_theta = "prior";
  auto result = run_experiment(cfg);
  REQUIRE(result.agents.front().complete());
  return std::move(result.agents.front().logs);
}

}  // namespace

TEST_CASE("POI L1 distance") {
  const PoiModel model = one_row_model(0.25);
  CHECK(poi_l1_distance(model, 0, 0, 1.7, 1.7) == 0.0);
  CHECK(poi_l1_distance(model, 0, 0, 1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  const PoiModel random = random_poi_model(5, {1.0, 3.0}, 0.05, 4);
  for (std::size_t s = 0; s < 5; ++s) {
    for (std::size_t a = 0; a < 5; ++a) {
      const double p = random.passive(s, a);
      const double closed = 2.0 * std::abs(std::pow(p, 1.0) - std::pow(p, 1.0 / 2.5));
      CHECK(std::abs(poi_l1_distance(random, s, a, 1.0, 2.5) - closed) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(poi_l1_distance(model, 0, 0, 0.9, 1.0), DomainError);
}

TEST_CASE("Lipschitz check") {
  std::vector<double> grid;
  for (int k = 0; k <= 8; ++k) grid.push_back(1.0 + 0.5 * k);
  SUBCASE("full grid on a random model") {
    const LipschitzReport r = check_lipschitz(random_poi_model(4, {1.0, 5.0}, 0.05, 1), grid);
    CHECK(r.ok);
    CHECK(r.comparisons == 16 * 36);
    CHECK(r.max_ratio <= 2.0 / std::numbers::e + 1e-12);
  }
  SUBCASE("extremal passive probability") {
    const PoiModel model = one_row_model(std::exp(-1.0));
    const std::vector<double> near{1.0, 1.0 + 1e-6};
    const LipschitzReport r = check_lipschitz(model, near);
    CHECK(r.max_ratio >= 0.9 * kPoiLipschitz);
    CHECK(r.max_ratio <= kPoiLipschitz + 1e-12);
    CHECK(r.argmax_p == doctest::Approx(std::exp(-1.0)));
  }
  SUBCASE("single value grid") {
    const std::vector<double> single{2.0};
    const LipschitzReport r = check_lipschitz(one_row_model(0.3), single);
    CHECK(r.ok);
    CHECK(r.comparisons == 0);
  }
  SUBCASE("grid below one") {
    const std::vector<double> bad{0.5, 1.0};
    CHECK_THROWS_AS(check_lipschitz(one_row_model(0.3), bad), DomainError);
  }
}

TEST_CASE("Pinsker check") {
  const PinskerResult same = check_pinsker(0.4, 2.0, 2.0);
  CHECK(same.kl == 0.0);
  CHECK(same.bound == 0.0);
  CHECK(same.ok);
  const PinskerResult r = check_pinsker(0.5, 1.0, 2.0);
  const double q = std::sqrt(0.5);
  CHECK(r.kl == doctest::Approx(bernoulli_kl(0.5, q)).epsilon(1e-12));
  CHECK(r.bound == doctest::Approx(2.0 * (0.5 - q) * (0.5 - q)).epsilon(1e-12));
  CHECK(r.kl > r.bound);
  Rng rng = seeded_rng(99);
  for (int k = 0; k < 10000; ++k) {
    const double p = 1e-3 + 0.998 * rng.uniform();
    CHECK(check_pinsker(p, 1.0 + 4.0 * rng.uniform(), 1.0 + 4.0 * rng.uniform()).ok);
  }
}

TEST_CASE("concentration constants") {
  const std::vector<double> support{1.0, 2.0};
  const ConcentrationConstants k = concentration_constants(support, 1.0, 0.1);
  CHECK(k.kappa == doctest::Approx(1.0));
  CHECK(k.delta_theta == doctest::Approx(1.0));
  CHECK(k.delta_p == 0.1);
  const double c0 = std::min(std::log(10.0) * 0.1, std::log(1.0 / 0.9) * 0.9) / 4.0;
  CHECK(k.c0 == doctest::Approx(c0).epsilon(1e-12));
  CHECK(k.c0 == doctest::Approx(0.0237).epsilon(1e-2));
  // the first log-ratio alone reaches (1 - 1/2) ln 10 at p = 0.1
  CHECK(k.b >= 2.0 * 0.5 * std::log(10.0) - 1e-12);
  const ConcentrationConstants coarse = concentration_constants(support, 1.0, 0.1, 1e-4);
  CHECK(std::abs(coarse.b - k.b) <= 1e-3);
  CHECK_THROWS_AS(concentration_constants(std::vector<double>{1.0}, 1.0, 0.1), ValidationError);
  CHECK_THROWS_AS(concentration_constants(support, 3.0, 0.1), ValidationError);
  CHECK_THROWS_AS(concentration_constants(support, 1.0, 0.5), ValidationError);
}

TEST_CASE("concentration tracker") {
  SUBCASE("hand-built logs") {
    EpisodeLog a;
    a.true_param = 2.0;
    a.switch_times = {1, 2, 4};
    a.sampled_params = {1.0, 2.0, 1.0};
    EpisodeLog b = a;
    b.sampled_params = {2.0, 1.0, 1.0};
    const std::vector<EpisodeLog> logs{a, b};
    const ConcentrationTrack t = track_concentration(logs);
    CHECK(t.mean_statistic == std::vector<double>{0.5, 1.0, 4.0});
    CHECK(t.mean_n == std::vector<double>{1.0, 2.0, 4.0});
    CHECK(t.max_statistic == 4.0);
    CHECK(t.argmax_episode == 3);
    CHECK(t.trend_slope == doctest::Approx(1.5));  // least squares of log{0.5,1,4} on log{1,2,4}
    CHECK(t.flagged);
  }
  SUBCASE("known parameter gives a zero statistic") {
    ExperimentConfig cfg;
    cfg.true_theta = "2";
    cfg.agents = {"oracle"};
    cfg.horizon = 64;
    cfg.seeds = 3;
    auto result = run_experiment(cfg);
    const ConcentrationTrack t = track_concentration(result.agents.front().logs);
    for (double v : t.mean_statistic) CHECK(v == 0.0);
    CHECK_FALSE(t.flagged);
  }
  SUBCASE("uninformative dynamics are flagged") {
    const TabularMdp m = build_riverswim(RiverSwimConfig{}, 1);
    auto sol = std::make_shared<const FamilySolutions>(ScalarParamFamily({1.0, 2.0}, {m, m}));
    std::vector<EpisodeLog> logs;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      DsPsrlAgent agent(std::make_unique<FinitePosterior>(sol, FiniteBelief::uniform({1.0, 2.0})));
      TabularEnvironment env(m, 0);
      EpisodeLog log = run_single(env, agent, 1024, seed);
      log.true_param = seed % 2 == 0 ? 1.0 : 2.0;
      logs.push_back(std::move(log));
    }
    const ConcentrationTrack t = track_concentration(logs);
    CHECK(t.flagged);
    CHECK(t.trend_slope > 0.8);
  }
  SUBCASE("missing theta") {
    EpisodeLog a;
    a.switch_times = {1};
    a.sampled_params = {1.0};
    const std::vector<EpisodeLog> logs{a};
    CHECK_THROWS_AS(track_concentration(logs), ValidationError);
  }
}

TEST_CASE("posterior replay at switch times") {
  ExperimentConfig cfg;
  const TabularSetting setting(cfg);
  const auto logs = ds_runs(cfg, 256, 2);
  for (const auto& log : logs) {
    const auto probs = posterior_at_switches(log, setting.solutions().family());
    REQUIRE(probs.size() == log.switch_times.size());
    CHECK(probs.front() == doctest::Approx(0.5));
    FiniteBelief direct = FiniteBelief::uniform({kTheta1, kTheta2});
    std::size_t j = 0;
    for (const auto& tr : log.transitions) {
      if (j < log.switch_times.size() && log.switch_times[j] == tr.t) {
        CHECK(probs[j] == doctest::Approx(direct.probability(setting.solutions().family().index_of(log.true_param))));
        ++j;
      }
      direct = finite_update(direct, setting.solutions().family(), tr);
    }
  }
}

TEST_CASE("delta diagnostics") {
  ExperimentConfig cfg;
  const TabularSetting setting(cfg);
  const auto& sol = setting.solutions();
  SUBCASE("sampling the truth gives zero") {
    EpisodeLog log;
    log.true_param = kTheta2;
    log.switch_times = {1};
    log.sampled_params = {kTheta2};
    for (Step t = 1; t <= 20; ++t) log.transitions.push_back({t, static_cast<StateId>(t % 10), kRight, 0, 0.0});
    const DeltaSeries d = delta_t_diagnostic(log, sol);
    for (double v : d.delta) CHECK(v == 0.0);
    CHECK(d.sum == 0.0);
  }
  SUBCASE("per-step bounds on real runs") {
    const auto logs = ds_runs(cfg, 512, 10);
    const double c = family_lipschitz_constant(sol.family());
    const double h = family_max_span(sol);
    CHECK(c > 0.0);
    for (const auto& log : logs) {
      const DeltaSeries d = delta_t_diagnostic(log, sol);
      REQUIRE(d.delta.size() == 512);
      for (std::size_t k = 0; k < d.delta.size(); ++k) {
        CHECK(std::abs(d.delta[k]) <= d.holder_bound[k] * (1 + 1e-12) + 1e-12);
        CHECK(d.holder_bound[k] <= d.lipschitz_bound[k] * (1 + 1e-12) + 1e-12);
      }
      CHECK(d.max_span <= h);
    }
    const DeltaChain chain = delta_chain_check(logs, sol);
    CHECK(chain.per_step_ok);
    CHECK(chain.c == doctest::Approx(c));
  }
  SUBCASE("family Lipschitz constant by hand") {
    const TabularMdp a(2, 1, {0.2, 0.8, 1.0, 0.0}, {0.0, 0.0});
    const TabularMdp b(2, 1, {0.6, 0.4, 1.0, 0.0}, {0.0, 0.0});
    CHECK(family_lipschitz_constant(ScalarParamFamily({1.0, 3.0}, {a, b})) == doctest::Approx(0.4));
    CHECK(family_lipschitz_constant(ScalarParamFamily({1.0}, {a})) == 0.0);
  }
}

TEST_CASE("chi-square helpers") {
  CHECK(chi2_survival(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi2_survival(0.0, 3) == 1.0);
  CHECK(chi2_survival(5.0, 0) == 1.0);
  const auto [stat, dof] = chi2_homogeneity({10, 20}, {20, 10});
  CHECK(stat == doctest::Approx(20.0 / 3.0));
  CHECK(dof == 1);
  const auto [s2, d2] = chi2_homogeneity({10, 0, 5}, {7, 0, 8});
  CHECK(d2 == 1);
  CHECK(s2 > 0.0);
}

TEST_CASE("posterior-sampling identity test") {
  ExperimentConfig cfg;
  SUBCASE("first switch samples the prior") {
    const SamplingIdentityReport r = sampling_identity_test(cfg, 1, 400);
    CHECK(r.status == CheckStatus::kPass);
    CHECK(r.true_counts[0] + r.true_counts[1] == 400);
  }
  SUBCASE("too few runs is inconclusive") {
    CHECK(sampling_identity_test(cfg, 2, 40).status == CheckStatus::kInconclusive);
  }
  SUBCASE("single-atom prior passes trivially") {
    ExperimentConfig poi;
    poi.env = EnvKind::kPoi;
    poi.poi.theta_support = {2.0};
    const SamplingIdentityReport r = sampling_identity_test(poi, 2, 10);
    CHECK(r.status == CheckStatus::kPass);
    CHECK(r.sampled_counts == std::vector<std::size_t>{10});
  }
  SUBCASE("second switch") {
    const SamplingIdentityReport r = sampling_identity_test(cfg, 2, 600);
    CHECK(r.status == CheckStatus::kPass);
  }
  SUBCASE("LQ is rejected") {
    ExperimentConfig lq;
    lq.env = EnvKind::kLq;
    CHECK_THROWS_AS(sampling_identity_test(lq, 1, 10), ValidationError);
  }
}

TEST_CASE("verify suite on a small budget") {
  VerifyOptions o = default_verify_options();
  o.identity_runs = 200;
  o.concentration_seeds = 20;
  o.short_horizon = 128;
  o.long_horizon = 256;
  o.delta_seeds = 10;
  o.delta_horizon = 256;
  o.pinsker_tuples = 500;
  const auto rows = run_verify_suite(o);
  std::vector<std::string> names;
  for (const auto& r : rows) names.push_back(r.name);
  CHECK(names == std::vector<std::string>{"poi_lipschitz", "pinsker_grid", "concentration_constants",
                                          "sampling_identity_switch_1", "sampling_identity_switch_2", "sampling_identity_switch_3",
                                          "poi_concentration_ratio", "delta_holder_per_step", "delta_chain",
                                          "switch_count_identity", "posterior_information_median"});
  for (const auto& r : rows) {
    if (r.name == "poi_lipschitz" || r.name == "pinsker_grid" || r.name == "switch_count_identity" ||
        r.name == "delta_holder_per_step") {
      CHECK(r.status == CheckStatus::kPass);
    }
  }
  std::ostringstream csv;
  write_verify_csv(csv, rows);
  CHECK(csv.str().rfind("check,status,value,threshold,detail\npoi_lipschitz,pass,", 0) == 0);
  std::ostringstream summary;
  write_verify_summary(summary, rows);
  CHECK(summary.str().find("passed") != std::string::npos);
}
