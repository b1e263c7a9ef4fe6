#include "dspsrl/core/episode_log.hpp"

#include <algorithm>
#include <string>

#include "dspsrl/core/errors.hpp"

namespace dspsrl {

namespace {

void validate_switches(const std::vector<Step>& switch_times) {
  if (switch_times.empty() || switch_times.front() != 1) {
    throw ValidationError("log: first switch must happen at t = 1");
  }
  for (std::size_t k = 1; k < switch_times.size(); ++k) {
    if (switch_times[k] <= switch_times[k - 1]) {
      throw ValidationError("log: switch times not strictly increasing at index " +
                            std::to_string(k));
    }
  }
}

}  // namespace

std::vector<double> EpisodeLog::rewards() const {
  std::vector<double> out;
  out.reserve(transitions.size());
  for (const Transition& tr : transitions) out.push_back(tr.reward);
  return out;
}

double EpisodeLog::param_at(Step t) const {
  const auto it = std::upper_bound(switch_times.begin(), switch_times.end(), t);
  if (it == switch_times.begin()) throw ValidationError("log: no parameter sampled before t");
  return sampled_params[static_cast<std::size_t>(it - switch_times.begin()) - 1];
}

void EpisodeLog::validate() const {
  validate_switches(switch_times);
  if (sampled_params.size() != switch_times.size()) {
    throw ValidationError("log: one sampled parameter is required per switch");
  }
  for (std::size_t k = 1; k < transitions.size(); ++k) {
    if (transitions[k].t <= transitions[k - 1].t) {
      throw ValidationError("log: transition times not strictly increasing");
    }
  }
}

void LqEpisodeLog::validate() const { validate_switches(switch_times); }

}  // namespace dspsrl
