#pragma once

#include <utility>

#include "dspsrl/core/rng.hpp"
#include "dspsrl/core/tabular_mdp.hpp"

namespace dspsrl {

enum class RewardMode {
  /// Reward is the table entry r(s, a).
  kTable,
  /// Reward is 1 when the realized next state equals the action (POI).
  kFollowIndicator,
};

/// Simulator over a true tabular model. Holds the current state; one instance
/// per run.
class TabularEnvironment {
 public:
  TabularEnvironment(TabularMdp model, StateId initial_state, RewardMode mode = RewardMode::kTable);

  const TabularMdp& model() const { return model_; }
  StateId state() const { return state_; }
  StateId reset();

  /// Samples the next state from the true row and returns (next, reward).
  std::pair<StateId, double> step(ActionId action, Rng& rng);

 private:
  TabularMdp model_;
  StateId initial_state_;
  StateId state_;
  RewardMode mode_;
};

}  // namespace dspsrl
