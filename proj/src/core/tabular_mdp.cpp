#include "dspsrl/core/tabular_mdp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dspsrl/core/errors.hpp"

namespace dspsrl {

TabularMdp::TabularMdp(std::size_t n_states, std::size_t n_actions, std::vector<double> transition,
                       std::vector<double> reward)
    : n_states_(n_states),
      n_actions_(n_actions),
      transition_(std::move(transition)),
      reward_(std::move(reward)) {
  if (n_states_ == 0 || n_actions_ == 0) {
    throw ValidationError("TabularMdp: state and action spaces must be non-empty");
  }
  if (transition_.size() != n_states_ * n_actions_ * n_states_) {
    throw ValidationError("TabularMdp: transition tensor has " +
                          std::to_string(transition_.size()) + " entries, expected " +
                          std::to_string(n_states_ * n_actions_ * n_states_));
  }
  if (reward_.size() != n_states_ * n_actions_) {
    throw ValidationError("TabularMdp: reward table has wrong size");
  }
  for (double r : reward_) {
    if (!std::isfinite(r)) throw ValidationError("TabularMdp: non-finite reward");
  }

  offsets_.reserve(n_states_ * n_actions_ + 1);
  offsets_.push_back(0);
  for (std::size_t k = 0; k < n_states_ * n_actions_; ++k) {
    double sum = 0.0;
    for (std::size_t next = 0; next < n_states_; ++next) {
      const double p = transition_[k * n_states_ + next];
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("TabularMdp: probability " + std::to_string(p) +
                              " outside [0, 1] in row " + std::to_string(k));
      }
      sum += p;
      if (p > 0.0) successors_.push_back({static_cast<StateId>(next), p});
    }
    if (std::abs(sum - 1.0) > kStochasticTol) {
      throw ValidationError("TabularMdp: row (state " + std::to_string(k / n_actions_) +
                            ", action " + std::to_string(k % n_actions_) + ") sums to " +
                            std::to_string(sum));
    }
    offsets_.push_back(successors_.size());
  }
}

ScalarParamFamily::ScalarParamFamily(std::vector<double> support, std::vector<TabularMdp> models,
                                     bool shared_reward)
    : support_(std::move(support)), models_(std::move(models)) {
  if (support_.empty()) throw ValidationError("ScalarParamFamily: empty support");
  if (support_.size() != models_.size()) {
    throw ValidationError("ScalarParamFamily: support and model lists differ in length");
  }
  for (std::size_t i = 0; i < support_.size(); ++i) {
    for (std::size_t j = i + 1; j < support_.size(); ++j) {
      if (support_[i] == support_[j]) {
        throw ValidationError("ScalarParamFamily: duplicate parameter " +
                              std::to_string(support_[i]));
      }
    }
  }
  const TabularMdp& first = models_.front();
  for (const TabularMdp& m : models_) {
    if (m.n_states() != first.n_states() || m.n_actions() != first.n_actions()) {
      throw ValidationError("ScalarParamFamily: models disagree on state/action counts");
    }
    if (shared_reward && m.rewards() != first.rewards()) {
      throw ValidationError("ScalarParamFamily: models disagree on the reward table");
    }
  }
}

std::size_t ScalarParamFamily::index_of(double theta) const {
  const auto it = std::find(support_.begin(), support_.end(), theta);
  if (it == support_.end()) {
    throw ValidationError("ScalarParamFamily: " + std::to_string(theta) + " is not in the support");
  }
  return static_cast<std::size_t>(it - support_.begin());
}

}  // namespace dspsrl
