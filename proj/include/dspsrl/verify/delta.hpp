#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dspsrl/core/episode_log.hpp"
#include "dspsrl/posteriors/tabular_posterior.hpp"

namespace dspsrl {

/// Per-step decomposition term Δ_t = Σ_x (P(x|x_t,a_t,θ*) - P(x|x_t,a_t,θ̃_t)) h_t(x),
/// with h_t the bias of the model sampled for step t.
struct DeltaSeries {
  std::vector<double> delta;
  /// ‖P* - P̃‖₁ · max|h_t| (Hölder).
  std::vector<double> holder_bound;
  /// C · H · |θ* - θ̃_t| with C the family's L1-Lipschitz constant and H the
  /// largest span over the family.
  std::vector<double> lipschitz_bound;
  double sum = 0.0;
  /// Largest span of any h_t used in this run.
  double max_span = 0.0;
};

/// max over (s, a) and support pairs of ‖P(·|s,a,θ) - P(·|s,a,θ')‖₁ / |θ - θ'|.
/// 0 for a single-member family.
double family_lipschitz_constant(const ScalarParamFamily& family);

/// Largest bias span over every member of the family.
double family_max_span(const FamilySolutions& solutions);

/// Throws ValidationError when the log carries no θ* or a sampled parameter
/// outside the family.
DeltaSeries delta_t_diagnostic(const EpisodeLog& log, const FamilySolutions& solutions);

/// Cross-seed comparison of Σ_t E[Δ_t] with C · H · sqrt(2 C' T log² T).
struct DeltaChain {
  double mean_sum = 0.0;
  double c = 0.0;
  double h = 0.0;
  /// Empirical C' = max_j E[N_{j-1} |θ* - θ̃_j|²] / log T.
  double c_prime = 0.0;
  double bound = 0.0;
  /// Every step satisfied |Δ_t| <= Hölder bound + 1e-12 and Hölder <= Lipschitz bound + 1e-12.
  bool per_step_ok = true;
  bool ok = true;
};

/// `logs` must share the horizon T = number of transitions, T >= 2.
DeltaChain delta_chain_check(std::span<const EpisodeLog> logs, const FamilySolutions& solutions);

}  // namespace dspsrl
