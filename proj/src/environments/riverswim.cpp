#include "dspsrl/environments/riverswim.hpp"

#include <string>
#include <vector>

#include "dspsrl/core/errors.hpp"

namespace dspsrl {

void RiverSwimConfig::validate() const {
  if (n_states < 2) throw ValidationError("riverswim: n_states must be at least 2");
  if (!(fail_low > 0.0 && fail_low < fail_high && fail_high < 1.0)) {
    throw ValidationError("riverswim: need 0 < fail_low < fail_high < 1");
  }
  if (contradicting_prefix >= n_states) {
    throw ValidationError("riverswim: contradicting_prefix must be smaller than n_states");
  }
  if (!(stay_fraction >= 0.0 && stay_fraction <= 1.0)) {
    throw ValidationError("riverswim: stay_fraction must lie in [0, 1]");
  }
}

TabularMdp build_riverswim(const RiverSwimConfig& config, int theta_index) {
  config.validate();
  if (theta_index != 1 && theta_index != 2) {
    throw ValidationError("riverswim: theta_index must be 1 or 2, got " +
                          std::to_string(theta_index));
  }
  const std::size_t k = config.n_states;
  std::vector<double> transition(k * 2 * k, 0.0);
  std::vector<double> reward(k * 2, 0.0);
  auto at = [&](std::size_t s, ActionId a, std::size_t next) -> double& {
    return transition[(s * 2 + a) * k + next];
  };

  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t left = s == 0 ? 0 : s - 1;
    const std::size_t right = s + 1 == k ? s : s + 1;
    const double fail =
        (theta_index == 1 || s < config.contradicting_prefix) ? config.fail_high : config.fail_low;

    at(s, kLeft, left) = 1.0;

    at(s, kRight, right) += 1.0 - fail;
    at(s, kRight, s) += fail * config.stay_fraction;
    at(s, kRight, left) += fail * (1.0 - config.stay_fraction);
  }
  reward[0 * 2 + kLeft] = config.left_reward;
  reward[(k - 1) * 2 + kRight] = config.right_reward;
  return TabularMdp(k, 2, std::move(transition), std::move(reward));
}

ScalarParamFamily build_scalar_family(const RiverSwimConfig& config) {
  std::vector<TabularMdp> models;
  models.push_back(build_riverswim(config, 1));
  models.push_back(build_riverswim(config, 2));
  return ScalarParamFamily({kTheta1, kTheta2}, std::move(models));
}

}  // namespace dspsrl
