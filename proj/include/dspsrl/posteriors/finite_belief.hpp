#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dspsrl/core/rng.hpp"
#include "dspsrl/core/tabular_mdp.hpp"

namespace dspsrl {

/// Posterior over a finite set of scalar parameters, kept in log space.
class FiniteBelief {
 public:
  /// `weights` need not be normalized; zero weights are allowed but not all.
  FiniteBelief(std::vector<double> support, std::span<const double> weights);
  static FiniteBelief uniform(std::vector<double> support);

  std::size_t size() const { return support_.size(); }
  std::span<const double> support() const { return support_; }
  std::span<const double> log_weights() const { return log_weights_; }
  double probability(std::size_t index) const;

  /// Adds log-likelihoods and renormalizes. When every entry of
  /// `log_likelihood` is identical the belief is left bit-for-bit unchanged.
  /// Throws ImpossibleObservation when no support point with positive weight
  /// assigns the observation positive probability.
  void absorb(std::span<const double> log_likelihood);

  std::size_t sample_index(Rng& rng) const;

 private:
  std::vector<double> support_;
  std::vector<double> log_weights_;
};

double log_sum_exp(std::span<const double> values);

/// Bayes update with P(next | s, a, θ_i) read from the family's i-th model.
FiniteBelief finite_update(const FiniteBelief& belief, const ScalarParamFamily& family,
                           const Transition& obs);

/// Draw θ with probability exp(log_weight). Never mutates the belief.
double finite_sample(const FiniteBelief& belief, Rng& rng);

void to_json(nlohmann::json& j, const FiniteBelief& belief);

}  // namespace dspsrl
