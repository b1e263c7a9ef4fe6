#include "dspsrl/verify/concentration.hpp"

#include <cmath>

#include "dspsrl/core/errors.hpp"
#include "dspsrl/posteriors/finite_belief.hpp"

namespace dspsrl {

ConcentrationTrack track_concentration(std::span<const EpisodeLog> logs) {
  ConcentrationTrack out;
  std::vector<double> sum_stat;
  std::vector<double> sum_n;
  for (const auto& log : logs) {
    if (std::isnan(log.true_param)) throw ValidationError("track_concentration: log without theta*");
    if (log.sampled_params.size() != log.switch_times.size()) {
      throw ValidationError("track_concentration: one sampled parameter per switch required");
    }
    for (std::size_t j = 0; j < log.switch_times.size(); ++j) {
      const double theta = log.sampled_params[j];
      if (std::isnan(theta)) throw ValidationError("track_concentration: sampled parameter missing");
      if (sum_stat.size() <= j) {
        sum_stat.push_back(0.0);
        sum_n.push_back(0.0);
        out.n_logs.push_back(0);
      }
      const double n = static_cast<double>(log.switch_times[j]);
      const double err = log.true_param - theta;
      sum_stat[j] += n * err * err;
      sum_n[j] += n;
      ++out.n_logs[j];
    }
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t j = 0; j < sum_stat.size(); ++j) {
    const double count = static_cast<double>(out.n_logs[j]);
    out.mean_statistic.push_back(sum_stat[j] / count);
    out.mean_n.push_back(sum_n[j] / count);
    if (out.mean_statistic[j] > out.max_statistic) {
      out.max_statistic = out.mean_statistic[j];
      out.argmax_episode = j + 1;
    }
    if (out.mean_statistic[j] > 0.0) {
      xs.push_back(std::log(out.mean_n[j]));
      ys.push_back(std::log(out.mean_statistic[j]));
    }
  }
  if (xs.size() >= 2) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      mx += xs[k];
      my += ys[k];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      sxy += (xs[k] - mx) * (ys[k] - my);
      sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    out.trend_slope = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  out.flagged = out.trend_slope > 0.5;
  return out;
}

std::vector<double> posterior_at_switches(const EpisodeLog& log, const ScalarParamFamily& family) {
  const std::size_t truth = family.index_of(log.true_param);
  const auto support = family.support();
  FiniteBelief belief = FiniteBelief::uniform(std::vector<double>(support.begin(), support.end()));
  std::vector<double> out;
  std::size_t next = 0;
  for (const auto& tr : log.transitions) {
    while (next < log.switch_times.size() && log.switch_times[next] == tr.t) {
      out.push_back(belief.probability(truth));
      ++next;
    }
    belief = finite_update(belief, family, tr);
  }
  return out;
}

}  // namespace dspsrl
