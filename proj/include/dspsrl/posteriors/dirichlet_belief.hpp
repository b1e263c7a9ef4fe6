#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dspsrl/core/rng.hpp"
#include "dspsrl/core/tabular_mdp.hpp"

namespace dspsrl {

/// Independent Dirichlet posterior over every transition row, restricted to a
/// structural support mask.
class DirichletBelief {
 public:
  /// alpha and mask are [S x A x S]. alpha must be positive exactly where the
  /// mask is set and zero elsewhere, and every row needs an allowed successor.
  DirichletBelief(std::size_t n_states, std::size_t n_actions, std::vector<double> alpha,
                  std::vector<std::uint8_t> mask);

  /// Concentration `prior` on every nonzero transition of `structure`, zero
  /// elsewhere.
  static DirichletBelief on_support_of(const TabularMdp& structure, double prior = 1.0);

  std::size_t n_states() const { return n_states_; }
  std::size_t n_actions() const { return n_actions_; }
  double alpha(StateId s, ActionId a, StateId next) const { return alpha_[index(s, a, next)]; }
  bool allowed(StateId s, ActionId a, StateId next) const { return mask_[index(s, a, next)] != 0; }
  std::span<const double> alpha_row(StateId s, ActionId a) const {
    return {alpha_.data() + index(s, a, 0), n_states_};
  }
  const std::vector<double>& alphas() const { return alpha_; }

  /// alpha row divided by its sum.
  std::vector<double> mean_row(StateId s, ActionId a) const;

  /// In-place counting update. Throws ImpossibleObservation for a masked-out
  /// transition.
  void observe(const Transition& obs);

 private:
  std::size_t index(StateId s, ActionId a, StateId next) const {
    return (static_cast<std::size_t>(s) * n_actions_ + a) * n_states_ + next;
  }

  std::size_t n_states_;
  std::size_t n_actions_;
  std::vector<double> alpha_;
  std::vector<std::uint8_t> mask_;
};

DirichletBelief dirichlet_update(const DirichletBelief& belief, const Transition& obs);

/// Draws every row from its Dirichlet; the reward table is passed through.
TabularMdp dirichlet_sample(const DirichletBelief& belief, std::span<const double> reward, Rng& rng);

void to_json(nlohmann::json& j, const DirichletBelief& belief);

}  // namespace dspsrl
