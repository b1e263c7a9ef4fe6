#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dspsrl/core/types.hpp"

namespace dspsrl {

/// Finite MDP: dense transition tensor [S x A x S] plus a reward table [S x A].
///
/// Immutable after construction. The constructor enforces row-stochasticity
/// (within kStochasticTol), probabilities in [0, 1] and finite rewards, so any
/// instance in circulation is valid. Each row also keeps a sparse list of its
/// successors, which the planners iterate over.
class TabularMdp {
 public:
  struct Successor {
    StateId state;
    double probability;
  };

  TabularMdp(std::size_t n_states, std::size_t n_actions, std::vector<double> transition,
             std::vector<double> reward);

  std::size_t n_states() const { return n_states_; }
  std::size_t n_actions() const { return n_actions_; }

  std::span<const double> row(StateId s, ActionId a) const {
    return {transition_.data() + (static_cast<std::size_t>(s) * n_actions_ + a) * n_states_,
            n_states_};
  }
  double probability(StateId s, ActionId a, StateId next) const { return row(s, a)[next]; }
  double reward(StateId s, ActionId a) const {
    return reward_[static_cast<std::size_t>(s) * n_actions_ + a];
  }

  std::span<const Successor> successors(StateId s, ActionId a) const {
    const std::size_t k = static_cast<std::size_t>(s) * n_actions_ + a;
    return {successors_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
  }

  const std::vector<double>& transitions() const { return transition_; }
  const std::vector<double>& rewards() const { return reward_; }

  friend bool operator==(const TabularMdp& lhs, const TabularMdp& rhs) {
    return lhs.n_states_ == rhs.n_states_ && lhs.n_actions_ == rhs.n_actions_ &&
           lhs.transition_ == rhs.transition_ && lhs.reward_ == rhs.reward_;
  }

 private:
  std::size_t n_states_;
  std::size_t n_actions_;
  std::vector<double> transition_;
  std::vector<double> reward_;
  std::vector<Successor> successors_;
  std::vector<std::size_t> offsets_;
};

/// Finite set of scalar parameters, each mapped to a fully specified MDP.
class ScalarParamFamily {
 public:
  /// `shared_reward` demands identical reward tables across the family; the
  /// recommendation model turns it off because its expected reward depends on
  /// the parameter.
  ScalarParamFamily(std::vector<double> support, std::vector<TabularMdp> models,
                    bool shared_reward = true);

  std::size_t size() const { return support_.size(); }
  std::span<const double> support() const { return support_; }
  const TabularMdp& model(std::size_t index) const { return models_.at(index); }

  /// Throws ValidationError when theta is not an element of the support.
  std::size_t index_of(double theta) const;
  const TabularMdp& build(double theta) const { return models_[index_of(theta)]; }

 private:
  std::vector<double> support_;
  std::vector<TabularMdp> models_;
};

}  // namespace dspsrl
