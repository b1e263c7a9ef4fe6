#include "dspsrl/verify/sampling_identity.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "dspsrl/core/errors.hpp"
#include "dspsrl/harness/experiment.hpp"

namespace dspsrl {

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

double chi2_survival(double statistic, std::size_t dof) {
  if (dof == 0) return 1.0;
  if (!(statistic > 0.0)) return 1.0;
  return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

std::pair<double, std::size_t> chi2_homogeneity(const std::vector<std::size_t>& a,
                                                const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) throw ValidationError("chi2_homogeneity: tables differ in width");
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    na += static_cast<double>(a[k]);
    nb += static_cast<double>(b[k]);
  }
  if (na == 0.0 || nb == 0.0) return {0.0, 0};
  const double total = na + nb;
  double stat = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double col = static_cast<double>(a[k] + b[k]);
    if (col == 0.0) continue;
    ++used;
    const double ea = na * col / total;
    const double eb = nb * col / total;
    stat += (static_cast<double>(a[k]) - ea) * (static_cast<double>(a[k]) - ea) / ea;
    stat += (static_cast<double>(b[k]) - eb) * (static_cast<double>(b[k]) - eb) / eb;
  }
  return {stat, used > 0 ? used - 1 : 0};
}

SamplingIdentityReport sampling_identity_test(const ExperimentConfig& config, std::size_t switch_index,
                                      std::size_t n_runs, double alpha) {
  if (switch_index == 0 || switch_index > 40) {
    throw ValidationError("sampling_identity_test: switch_index must be in 1..40");
  }
  if (config.env != EnvKind::kRiverSwim && config.env != EnvKind::kPoi) {
    throw ValidationError("sampling_identity_test: needs a scalar-parameter environment");
  }
  ExperimentConfig cfg = config;
  cfg.agents = {"ds_psrl"};
  cfg.true_theta = "prior";
  cfg.seeds = n_runs;
  cfg.horizon = Step{1} << (switch_index - 1);
  cfg.record_diagnostics = false;

  SamplingIdentityReport report;
  report.switch_index = switch_index;
  report.n_runs = n_runs;
  const TabularSetting setting(cfg);
  const auto support = setting.solutions().family().support();
  report.support.assign(support.begin(), support.end());
  report.true_counts.assign(support.size(), 0);
  report.sampled_counts.assign(support.size(), 0);

  if (n_runs > 0) {
    const ExperimentResult result = run_experiment(cfg);
    const AgentOutcome& ds = result.agent("ds_psrl");
    if (!ds.complete()) {
      report.status = CheckStatus::kFail;
      report.detail = "run failed: " + ds.runs.front().error;
      for (const auto& run : ds.runs) {
        if (!run.ok) {
          report.detail = "run failed: " + run.error;
          break;
        }
      }
      return report;
    }
    const auto& family = setting.solutions().family();
    for (const auto& log : ds.logs) {
      if (log.switch_times.size() < switch_index) {
        throw Error("sampling_identity_test: run ended before the requested switch");
      }
      ++report.true_counts[family.index_of(log.true_param)];
      ++report.sampled_counts[family.index_of(log.sampled_params[switch_index - 1])];
    }
  }

  const auto [stat, dof] = chi2_homogeneity(report.true_counts, report.sampled_counts);
  report.chi2 = stat;
  report.dof = dof;
  report.p_value = chi2_survival(stat, dof);

  if (n_runs > 0) {
    const double expected = static_cast<double>(n_runs) / static_cast<double>(support.size());
    double fit = 0.0;
    for (std::size_t c : report.sampled_counts) {
      fit += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
    }
    report.prior_fit_p_value = chi2_survival(fit, support.size() - 1);
  }

  std::ostringstream detail;
  detail << "switch " << switch_index << ", " << n_runs << " runs, chi2 " << stat << " on " << dof
         << " dof";
  if (support.size() == 1) {
    report.status = CheckStatus::kPass;
    detail << "; single-atom prior";
  } else if (n_runs < 30 * support.size()) {
    report.status = CheckStatus::kInconclusive;
    detail << "; fewer than 30 runs per atom";
  } else {
    report.status = report.p_value > alpha ? CheckStatus::kPass : CheckStatus::kFail;
  }
  report.detail = detail.str();
  return report;
}

}  // namespace dspsrl
