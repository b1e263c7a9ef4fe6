#pragma once

#include <cstdint>

namespace dspsrl {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

/// Time steps are 1-based: the first decision happens at t = 1.
using Step = std::int64_t;

/// Tolerance used when checking that generated transition rows are stochastic.
inline constexpr double kStochasticTol = 1e-9;
/// Tolerance accepted on user-supplied probability vectors.
inline constexpr double kInputTol = 1e-6;

/// One realized interaction (x_t, a_t, x_{t+1}) together with its reward.
struct Transition {
  Step t = 0;
  StateId state = 0;
  ActionId action = 0;
  StateId next_state = 0;
  double reward = 0.0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

}  // namespace dspsrl
