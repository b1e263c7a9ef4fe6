#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dspsrl/core/episode_log.hpp"

namespace dspsrl {

/// Cumulative regret curves over t = 1..T (regret at t = 0 is 0 and not stored).
struct RegretCurve {
  std::vector<std::vector<double>> per_seed;
  std::vector<double> mean;
  /// Sample standard deviation across seeds over sqrt(n_seeds); 0 for one seed.
  std::vector<double> std_error;

  std::size_t length() const { return mean.size(); }
  std::size_t n_seeds() const { return per_seed.size(); }
};

/// curve[t-1] = j_star * t - sum of the first t rewards.
std::vector<double> compute_regret(std::span<const double> rewards, double j_star);
std::vector<double> compute_regret(const EpisodeLog& log, double j_star);
/// Costs are negated rewards: curve[t-1] = sum of the first t costs - avg_cost * t.
std::vector<double> compute_cost_regret(const LqEpisodeLog& log, double optimal_avg_cost);

/// Throws ValidationError when the list is empty or lengths differ.
RegretCurve aggregate(std::vector<std::vector<double>> per_seed);

}  // namespace dspsrl
