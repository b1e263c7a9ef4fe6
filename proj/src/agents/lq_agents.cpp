#include "dspsrl/agents/lq_agents.hpp"

#include <cmath>
#include <string>

#include "dspsrl/core/errors.hpp"

namespace dspsrl {

SamplingLqAgent::SamplingLqAgent(GaussianLinearBelief belief, Eigen::MatrixXd q, Eigen::MatrixXd r,
                                 DareOptions options)
    : belief_(std::move(belief)), q_(std::move(q)), r_(std::move(r)), options_(options) {
  const auto n = static_cast<Eigen::Index>(belief_.n());
  const auto d = static_cast<Eigen::Index>(belief_.d());
  if (q_.rows() != n || q_.cols() != n || r_.rows() != d || r_.cols() != d) {
    throw ValidationError("SamplingLqAgent: cost matrices do not match the belief dimensions");
  }
  gain_ = Eigen::MatrixXd::Zero(d, n);
}

void SamplingLqAgent::observe(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& next_x) {
  belief_.observe(x, u, next_x);
}

void SamplingLqAgent::resample(Rng& rng) {
  for (std::size_t attempt = 0; attempt < kMaxDraws; ++attempt) {
    const LinearDynamics draw = gaussian_sample(belief_, rng);
    try {
      gain_ = solve_dare(draw.a, draw.b, q_, r_, belief_.noise_cov(), options_).gain;
      return;
    } catch (const PlannerError&) {
      ++rejected_;
    }
  }
}

LqDecision DsPsrlLqAgent::act(Step t, const Eigen::VectorXd& x, Rng& rng) {
  if (t < 1) throw ValidationError("agent: time steps start at 1");
  if (t > next_switch_) throw ValidationError("DsPsrlLqAgent: step " + std::to_string(t) + " skipped a switch");
  const bool switched = t == next_switch_;
  if (switched) {
    resample(rng);
    next_switch_ *= 2;
  }
  return {control(x), switched};
}

bool tsde_lq_should_switch(const TsdeLqState& state, Step t, double log_det_precision) {
  if (t - state.episode_start >= state.prev_episode_len + 1) return true;
  return log_det_precision - state.log_det_at_episode_start > std::log(2.0);
}

LqDecision TsdeLqAgent::act(Step t, const Eigen::VectorXd& x, Rng& rng) {
  if (t < 1) throw ValidationError("agent: time steps start at 1");
  const double log_det = belief_.log_det_precision();
  bool switched = false;
  if (t == 1) {
    state_.log_det_at_episode_start = log_det;
    switched = true;
  } else if (tsde_lq_should_switch(state_, t, log_det)) {
    state_.prev_episode_len = t - state_.episode_start;
    state_.episode_start = t;
    state_.log_det_at_episode_start = log_det;
    switched = true;
  }
  if (switched) resample(rng);
  return {control(x), switched};
}

LqDecision EveryStepLqAgent::act(Step t, const Eigen::VectorXd& x, Rng& rng) {
  if (t < 1) throw ValidationError("agent: time steps start at 1");
  resample(rng);
  return {control(x), true};
}

LqDecision OracleLqAgent::act(Step t, const Eigen::VectorXd& x, Rng&) {
  if (t < 1) throw ValidationError("agent: time steps start at 1");
  return {-gain_ * x, t == 1};
}

}  // namespace dspsrl
