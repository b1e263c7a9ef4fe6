#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <string>

#include "dspsrl/environments/poi.hpp"

namespace dspsrl {

/// Lipschitz constant of θ -> P(·|s, a, θ) in L1 for the POI model.
inline constexpr double kPoiLipschitz = 2.0 / std::numbers::e;

/// Σ_s' |P(s'|s,a,θ) - P(s'|s,a,θ')| by direct summation over the two rows.
double poi_l1_distance(const PoiModel& model, std::size_t s, std::size_t a, double theta,
                       double theta_prime);

struct LipschitzReport {
  std::size_t comparisons = 0;
  /// max over tested tuples of distance / |θ - θ'|.
  double max_ratio = 0.0;
  std::size_t argmax_s = 0;
  std::size_t argmax_a = 0;
  double argmax_theta = 0.0;
  double argmax_theta_prime = 0.0;
  /// Passive probability p = P(a | s) at the argmax.
  double argmax_p = 0.0;
  bool ok = true;
  /// First tuple exceeding the bound, empty when ok.
  std::string counterexample;
};

/// Every (s, a) and every pair θ < θ' of the grid. Throws DomainError for a
/// grid value below 1.
LipschitzReport check_lipschitz(const PoiModel& model, std::span<const double> theta_grid);

struct PinskerResult {
  double kl = 0.0;
  double bound = 0.0;
  bool ok = true;
};

/// KL(Bern(p^{1/θ*}) || Bern(p^{1/θ})) against 2 (p^{1/θ*} - p^{1/θ})².
PinskerResult check_pinsker(double p, double theta_star, double theta);

struct ConcentrationConstants {
  double b = 0.0;
  double c0 = 0.0;
  double kappa = 0.0;
  double delta_theta = 0.0;
  double delta_p = 0.0;
};

/// Closed forms over p in [Δ_P, 1 - Δ_P]; the maxima in B are taken on a grid
/// of the given resolution plus both endpoints. Throws ValidationError unless
/// |Θ| >= 2, θ* is in Θ and Δ_P lies in (0, 0.5).
ConcentrationConstants concentration_constants(std::span<const double> support, double theta_star,
                                               double delta_p, double resolution = 1e-5);

}  // namespace dspsrl
