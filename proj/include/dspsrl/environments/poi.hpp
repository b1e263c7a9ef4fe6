#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dspsrl/core/tabular_mdp.hpp"

namespace dspsrl {

/// Points-of-interest recommendation model.
///
/// The passive model is first-order: P(s' | s) is a row-stochastic matrix over
/// POIs. Recommending POI a with propensity θ >= 1 lifts the passive
/// probability p = P(a | s) to p^{1/θ} and rescales every other entry by
/// (1 - p^{1/θ}) / (1 - p).
class PoiModel {
 public:
  /// Clamps every passive entry into [clamp, 1 - clamp] and renormalizes until
  /// the bounds hold. Throws ValidationError for a malformed matrix, a clamp
  /// outside (0, 0.5), clamp * n_pois > 1, or any θ < 1.
  PoiModel(std::size_t n_pois, std::vector<double> passive, std::vector<double> theta_support,
           double clamp);

  std::size_t n_pois() const { return n_pois_; }
  std::span<const double> passive_row(std::size_t poi) const {
    return {passive_.data() + poi * n_pois_, n_pois_};
  }
  double passive(std::size_t from, std::size_t to) const { return passive_[from * n_pois_ + to]; }
  std::span<const double> theta_support() const { return theta_support_; }
  double clamp() const { return clamp_; }

 private:
  std::size_t n_pois_;
  std::vector<double> passive_;
  std::vector<double> theta_support_;
  double clamp_;
};

/// Passive matrix with Dirichlet(1) rows drawn from `seed`, then clamped.
PoiModel random_poi_model(std::size_t n_pois, std::vector<double> theta_support, double clamp,
                          std::uint64_t seed);

/// Row P(· | current, action, θ). Throws DomainError for θ < 1.
std::vector<double> poi_transition_probs(const PoiModel& model, std::size_t current_poi,
                                         std::size_t action, double theta);

/// 1 when the user went where we pointed, else 0.
double poi_reward(std::size_t action, std::size_t realized_next);

/// MDP over POIs with expected reward r(s, a) = P(a | s, a, θ) = p^{1/θ}.
TabularMdp build_poi_mdp(const PoiModel& model, double theta);

/// One MDP per θ in the model's support; rewards differ across members.
ScalarParamFamily build_poi_family(const PoiModel& model);

}  // namespace dspsrl
