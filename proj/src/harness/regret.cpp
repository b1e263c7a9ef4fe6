#include "dspsrl/harness/regret.hpp"

#include <cmath>

#include "dspsrl/core/errors.hpp"

namespace dspsrl {

std::vector<double> compute_regret(std::span<const double> rewards, double j_star) {
  std::vector<double> out(rewards.size());
  double earned = 0.0;
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    earned += rewards[i];
    out[i] = j_star * static_cast<double>(i + 1) - earned;
  }
  return out;
}

std::vector<double> compute_regret(const EpisodeLog& log, double j_star) {
  return compute_regret(log.rewards(), j_star);
}

std::vector<double> compute_cost_regret(const LqEpisodeLog& log, double optimal_avg_cost) {
  std::vector<double> out(log.costs.size());
  double paid = 0.0;
  for (std::size_t i = 0; i < log.costs.size(); ++i) {
    paid += log.costs[i];
    out[i] = paid - optimal_avg_cost * static_cast<double>(i + 1);
  }
  return out;
}

RegretCurve aggregate(std::vector<std::vector<double>> per_seed) {
  if (per_seed.empty()) throw ValidationError("aggregate: no curves");
  const std::size_t len = per_seed.front().size();
  for (const auto& c : per_seed) {
    if (c.size() != len) throw ValidationError("aggregate: curves have different lengths");
  }
  const double n = static_cast<double>(per_seed.size());
  RegretCurve out;
  out.mean.assign(len, 0.0);
  out.std_error.assign(len, 0.0);
  for (std::size_t t = 0; t < len; ++t) {
    double sum = 0.0;
    for (const auto& c : per_seed) sum += c[t];
    const double mean = sum / n;
    out.mean[t] = mean;
    if (per_seed.size() > 1) {
      double sq = 0.0;
      for (const auto& c : per_seed) sq += (c[t] - mean) * (c[t] - mean);
      out.std_error[t] = std::sqrt(sq / (n - 1.0)) / std::sqrt(n);
    }
  }
  out.per_seed = std::move(per_seed);
  return out;
}

}  // namespace dspsrl
