#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dspsrl/core/episode_log.hpp"
#include "dspsrl/core/tabular_mdp.hpp"

namespace dspsrl {

/// Cross-seed view of N_{j-1} |θ* - θ̃_j|², where θ̃_j is drawn at the j-th
/// switch τ_j and N_{j-1} = τ_j (one plus the steps before the episode).
struct ConcentrationTrack {
  /// Indexed by episode j - 1; mean over the logs that reached episode j.
  std::vector<double> mean_statistic;
  /// Mean N_{j-1} over the same logs.
  std::vector<double> mean_n;
  std::vector<std::size_t> n_logs;
  double max_statistic = 0.0;
  std::size_t argmax_episode = 0;
  /// Least-squares slope of log(mean statistic) on log(mean N) over episodes
  /// with a positive mean; 0 when fewer than two such episodes.
  double trend_slope = 0.0;
  /// Set when the slope exceeds 0.5: the posterior is not concentrating.
  bool flagged = false;
};

/// Throws ValidationError when a log has no θ* or a missing sampled parameter.
ConcentrationTrack track_concentration(std::span<const EpisodeLog> logs);

/// Probability of the true parameter under the posterior in force at each
/// switch, recomputed by replaying the log from a uniform prior over `family`.
std::vector<double> posterior_at_switches(const EpisodeLog& log, const ScalarParamFamily& family);

}  // namespace dspsrl
