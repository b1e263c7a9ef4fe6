#include "dspsrl/verify/suite.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "dspsrl/core/rng.hpp"
#include "dspsrl/harness/experiment.hpp"
#include "dspsrl/harness/output.hpp"
#include "dspsrl/verify/concentration.hpp"
#include "dspsrl/verify/delta.hpp"
#include "dspsrl/verify/poi_checks.hpp"

namespace dspsrl {

namespace {

CheckStatus pass_if(bool ok) { return ok ? CheckStatus::kPass : CheckStatus::kFail; }

PoiModel poi_model_of(const ExperimentConfig& config) {
  return random_poi_model(config.poi.n_pois, config.poi.theta_support, config.poi.clamp,
                          config.poi.model_seed);
}

std::vector<EpisodeLog> ds_logs(ExperimentConfig config, Step horizon, std::size_t seeds,
                                std::uint64_t base_seed) {
  config.agents = {"ds_psrl"};
  config.horizon = horizon;
  config.seeds = seeds;
  config.base_seed = base_seed;
  config.true_theta = "prior";
  config.record_diagnostics = false;
  ExperimentResult result = run_experiment(config);
  AgentOutcome& ds = result.agents.front();
  for (const auto& run : ds.runs) {
    if (!run.ok) throw Error("seed " + std::to_string(run.seed) + ": " + run.error);
  }
  return std::move(ds.logs);
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string str(double v) { return format_double(v); }

CheckRow lipschitz_row(const ExperimentConfig& poi) {
  std::vector<double> grid;
  for (int k = 0; k <= 8; ++k) grid.push_back(1.0 + 0.5 * k);
  const LipschitzReport rep = check_lipschitz(poi_model_of(poi), grid);
  CheckRow row{"poi_lipschitz", pass_if(rep.ok), rep.max_ratio, kPoiLipschitz, ""};
  row.detail = rep.ok ? std::to_string(rep.comparisons) + " comparisons; argmax p=" + str(rep.argmax_p) +
                            " theta=" + str(rep.argmax_theta) + "," + str(rep.argmax_theta_prime)
                      : rep.counterexample;
  return row;
}

CheckRow pinsker_row(std::size_t tuples, std::uint64_t seed) {
  Rng rng = substream(seed, 0, "verify:pinsker");
  std::size_t ok = 0;
  std::string first_bad;
  for (std::size_t k = 0; k < tuples; ++k) {
    const double p = 1e-3 + (1.0 - 2e-3) * rng.uniform();
    const double ts = 1.0 + 4.0 * rng.uniform();
    const double th = 1.0 + 4.0 * rng.uniform();
    if (check_pinsker(p, ts, th).ok) {
      ++ok;
    } else if (first_bad.empty()) {
      first_bad = "p=" + str(p) + " theta*=" + str(ts) + " theta=" + str(th);
    }
  }
  const double frac = tuples == 0 ? 1.0 : static_cast<double>(ok) / static_cast<double>(tuples);
  return {"pinsker_grid", pass_if(ok == tuples), frac, 1.0,
          first_bad.empty() ? std::to_string(tuples) + " tuples" : first_bad};
}

CheckRow constants_row(const ExperimentConfig& poi) {
  const auto& support = poi.poi.theta_support;
  if (support.size() < 2) {
    return {"concentration_constants", CheckStatus::kInconclusive, 0.0, 0.0, "single-atom support"};
  }
  const ConcentrationConstants k = concentration_constants(support, support.front(), poi.poi.clamp);
  const bool ok = k.b > 0.0 && k.c0 > 0.0 && k.kappa > 0.0 && k.delta_theta > 0.0;
  return {"concentration_constants", pass_if(ok), k.b, 0.0,
          "B=" + str(k.b) + " c0=" + str(k.c0) + " kappa=" + str(k.kappa) +
              " delta_theta=" + str(k.delta_theta) + " delta_P=" + str(k.delta_p)};
}

CheckRow concentration_row(const VerifyOptions& o) {
  const auto short_logs = ds_logs(o.poi, o.short_horizon, o.concentration_seeds, o.base_seed);
  const auto long_logs = ds_logs(o.poi, o.long_horizon, o.concentration_seeds, o.base_seed);
  const ConcentrationTrack a = track_concentration(short_logs);
  const ConcentrationTrack b = track_concentration(long_logs);
  const double ratio = a.max_statistic > 0.0 ? b.max_statistic / a.max_statistic
                                             : (b.max_statistic > 0.0 ? INFINITY : 1.0);
  CheckRow row{"poi_concentration_ratio", pass_if(ratio <= 1.5), ratio, 1.5, ""};
  row.detail = "max T=" + std::to_string(o.short_horizon) + ": " + str(a.max_statistic) +
               " (episode " + std::to_string(a.argmax_episode) + "), T=" +
               std::to_string(o.long_horizon) + ": " + str(b.max_statistic) + " (episode " +
               std::to_string(b.argmax_episode) + "); slope " + str(b.trend_slope) +
               (b.flagged ? " flagged" : "");
  return row;
}

}  // namespace

VerifyOptions default_verify_options() {
  VerifyOptions o;
  o.riverswim.env = EnvKind::kRiverSwim;
  o.poi.env = EnvKind::kPoi;
  return o;
}

std::vector<CheckRow> run_verify_suite(const VerifyOptions& o) {
  std::vector<CheckRow> rows;
  rows.push_back(lipschitz_row(o.poi));
  rows.push_back(pinsker_row(o.pinsker_tuples, o.base_seed));
  rows.push_back(constants_row(o.poi));

  for (std::size_t k = 1; k <= 3; ++k) {
    ExperimentConfig cfg = o.riverswim;
    cfg.base_seed = o.base_seed;
    const SamplingIdentityReport rep = sampling_identity_test(cfg, k, o.identity_runs);
    rows.push_back({"sampling_identity_switch_" + std::to_string(k), rep.status, rep.p_value, 1e-3, rep.detail});
  }

  rows.push_back(concentration_row(o));

  const auto logs = ds_logs(o.riverswim, o.delta_horizon, o.delta_seeds, o.base_seed);
  const TabularSetting setting(o.riverswim);
  const DeltaChain chain = delta_chain_check(logs, setting.solutions());
  rows.push_back({"delta_holder_per_step", pass_if(chain.per_step_ok), chain.h, 0.0,
                  "C=" + str(chain.c) + " H_emp=" + str(chain.h)});
  rows.push_back({"delta_chain", pass_if(chain.ok), chain.mean_sum, chain.bound,
                  "C=" + str(chain.c) + " H=" + str(chain.h) + " C'=" + str(chain.c_prime)});

  const auto expected =
      static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(o.delta_horizon)))) + 1;
  bool counts_ok = true;
  for (const auto& log : logs) counts_ok = counts_ok && log.switch_times.size() == expected;
  rows.push_back({"switch_count_identity", pass_if(counts_ok), static_cast<double>(expected),
                  static_cast<double>(expected), std::to_string(logs.size()) + " logs"});

  // Needs dynamics that differ on the visited states, so the prefix is removed.
  ExperimentConfig distinct = o.riverswim;
  distinct.riverswim.contradicting_prefix = 0;
  const TabularSetting distinct_setting(distinct);
  const auto& family = distinct_setting.solutions().family();
  std::vector<std::vector<double>> per_switch;
  for (const auto& log : ds_logs(distinct, o.delta_horizon, o.delta_seeds, o.base_seed)) {
    const auto probs = posterior_at_switches(log, family);
    if (per_switch.size() < probs.size()) per_switch.resize(probs.size());
    for (std::size_t j = 0; j < probs.size(); ++j) per_switch[j].push_back(probs[j]);
  }
  bool monotone = true;
  double prev = 0.0;
  std::ostringstream medians;
  for (std::size_t j = 0; j < per_switch.size(); ++j) {
    const double m = median(per_switch[j]);
    if (j > 0) medians << ' ';
    medians << std::setprecision(4) << m;
    if (m < prev - 1e-12) monotone = false;
    prev = m;
  }
  rows.push_back({"posterior_information_median", pass_if(monotone), prev, 0.0,
                  "prefix 0; medians " + medians.str()});
  return rows;
}

void write_verify_csv(std::ostream& out, const std::vector<CheckRow>& rows) {
  out << "check,status,value,threshold,detail\n";
  for (const auto& row : rows) {
    std::string detail = row.detail;
    std::replace(detail.begin(), detail.end(), '"', '\'');
    out << row.name << ',' << to_string(row.status) << ',' << format_double(row.value) << ','
        << format_double(row.threshold) << ",\"" << detail << "\"\n";
  }
}

void write_verify_summary(std::ostream& out, const std::vector<CheckRow>& rows) {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t inconclusive = 0;
  for (const auto& row : rows) {
    out << std::left << std::setw(32) << row.name << std::setw(14) << to_string(row.status)
        << row.detail << '\n';
    switch (row.status) {
      case CheckStatus::kPass:
        ++pass;
        break;
      case CheckStatus::kFail:
        ++fail;
        break;
      case CheckStatus::kInconclusive:
        ++inconclusive;
        break;
    }
  }
  out << pass << " passed, " << fail << " failed, " << inconclusive << " inconclusive\n";
}

}  // namespace dspsrl
