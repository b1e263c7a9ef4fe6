#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "dspsrl/core/types.hpp"

namespace dspsrl {

inline constexpr double kNoParam = std::numeric_limits<double>::quiet_NaN();

/// Record of one tabular run.
///
/// `sampled_params[k]` is the parameter drawn at `switch_times[k]`; it is NaN
/// when the belief has no scalar parameter (Dirichlet). `true_param` is the
/// scalar θ* of the run, NaN when not applicable.
struct EpisodeLog {
  std::vector<Transition> transitions;
  std::vector<Step> switch_times;
  std::vector<double> sampled_params;
  std::uint64_t seed = 0;
  double true_param = kNoParam;

  std::vector<double> rewards() const;

  /// Parameter in force at step t (the draw of the latest switch <= t).
  double param_at(Step t) const;

  /// Throws ValidationError when an invariant is broken: switch_times start at
  /// 1 and increase strictly, one sampled param per switch, and transition
  /// times increase strictly.
  void validate() const;
};

/// Record of one linear-quadratic run. `costs[t-1]` is the cost paid at step t.
struct LqEpisodeLog {
  std::vector<double> costs;
  std::vector<Step> switch_times;
  std::uint64_t seed = 0;

  void validate() const;
};

}  // namespace dspsrl
