#include "dspsrl/environments/tabular_environment.hpp"

#include "dspsrl/core/errors.hpp"

namespace dspsrl {

TabularEnvironment::TabularEnvironment(TabularMdp model, StateId initial_state, RewardMode mode)
    : model_(std::move(model)), initial_state_(initial_state), state_(initial_state), mode_(mode) {
  if (initial_state_ >= model_.n_states()) {
    throw ValidationError("TabularEnvironment: initial state out of range");
  }
}

StateId TabularEnvironment::reset() {
  state_ = initial_state_;
  return state_;
}

std::pair<StateId, double> TabularEnvironment::step(ActionId action, Rng& rng) {
  if (action >= model_.n_actions()) throw ValidationError("TabularEnvironment: action out of range");
  const StateId from = state_;
  state_ = static_cast<StateId>(categorical_sample(model_.row(from, action), rng));
  const double reward = mode_ == RewardMode::kTable ? model_.reward(from, action)
                                                    : (state_ == action ? 1.0 : 0.0);
  return {state_, reward};
}

}  // namespace dspsrl
