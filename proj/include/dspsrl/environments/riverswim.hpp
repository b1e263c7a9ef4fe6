#pragma once

#include <cstddef>

#include "dspsrl/core/tabular_mdp.hpp"

namespace dspsrl {

inline constexpr ActionId kLeft = 0;
inline constexpr ActionId kRight = 1;

/// Chain of K states; the swimmer starts at the left end (state 0).
///
/// Swimming left always succeeds. Swimming right fails with probability p(s);
/// a failed attempt stays put with probability `stay_fraction` and slips one
/// state left otherwise (at state 0 the slip is absorbed into staying).
struct RiverSwimConfig {
  std::size_t n_states = 10;
  double fail_high = 0.95;   // P1
  double fail_low = 0.2;     // P2
  double left_reward = 5.0;
  double right_reward = 10000.0;
  /// Number of left-end states on which θ₂ keeps the high fail probability.
  std::size_t contradicting_prefix = 3;
  double stay_fraction = 0.5;

  /// Throws ValidationError unless K >= 2, 0 < P2 < P1 < 1, prefix < K and
  /// stay_fraction in [0, 1].
  void validate() const;
};

/// Parameter values attached to θ₁ and θ₂.
inline constexpr double kTheta1 = 1.0;
inline constexpr double kTheta2 = 2.0;

/// theta_index 1 applies P1 everywhere; theta_index 2 applies P1 on the
/// contradicting prefix and P2 on the remaining states.
TabularMdp build_riverswim(const RiverSwimConfig& config, int theta_index);

/// Two-point family {θ₁, θ₂} = {1, 2}.
ScalarParamFamily build_scalar_family(const RiverSwimConfig& config);

}  // namespace dspsrl
