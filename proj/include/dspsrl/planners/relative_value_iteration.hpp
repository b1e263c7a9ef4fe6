#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dspsrl/core/tabular_mdp.hpp"

namespace dspsrl {

/// Solution of the average-reward Bellman equation J + h(s) = max_a [r(s,a) + P h].
struct AvgRewardSolution {
  double gain = 0.0;
  /// Differential value function, normalized so that min h = 0.
  std::vector<double> bias;
  std::vector<ActionId> policy;
  /// max h - min h.
  double span = 0.0;
  std::size_t iterations = 0;

  ActionId action(StateId s) const { return policy[s]; }
};

struct RviOptions {
  /// Stop once the span of the Bellman residual falls to tol * max(1, max |r|),
  /// so large reward tables do not chase a residual below rounding noise.
  double tol = 1e-9;
  std::size_t max_iter = 1'000'000;
  /// Weight of the Bellman update in h <- (1-w) h + w T h. Values below 1 make
  /// every policy's chain aperiodic without changing gains, biases or greedy
  /// actions.
  double aperiodicity = 0.9;
};

/// Relative value iteration with reference state 0 and span-of-residual
/// stopping (see RviOptions::tol for the scale). Ties in the greedy action go to the lowest action index. Throws
/// PlannerError (reporting the final residual span) when max_iter is reached.
AvgRewardSolution relative_value_iteration(const TabularMdp& mdp, const RviOptions& options = {});

inline AvgRewardSolution relative_value_iteration(const TabularMdp& mdp, double tol,
                                                  std::size_t max_iter) {
  return relative_value_iteration(mdp, RviOptions{tol, max_iter});
}

/// max(h) - min(h); 0 for an empty vector.
double span(std::span<const double> h);

}  // namespace dspsrl
