#pragma once

#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

#include "dspsrl/core/rng.hpp"
#include "dspsrl/core/types.hpp"
#include "dspsrl/planners/dare.hpp"
#include "dspsrl/posteriors/gaussian_belief.hpp"

namespace dspsrl {

struct LqDecision {
  Eigen::VectorXd control;
  bool switched = false;
};

/// Online controller for a linear-quadratic system.
class LqAgent {
 public:
  virtual ~LqAgent() = default;

  virtual std::string_view name() const = 0;
  virtual LqDecision act(Step t, const Eigen::VectorXd& x, Rng& rng) = 0;
  virtual void observe(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                       const Eigen::VectorXd& next_x) = 0;
};

/// Shared machinery of the sampling agents: a Gaussian belief over (A, B) and
/// the certainty-equivalent gain of the latest draw.
class SamplingLqAgent : public LqAgent {
 public:
  /// Sampled pairs whose Riccati iteration fails are redrawn, up to this many
  /// times per switch; after that the previous gain is kept.
  static constexpr std::size_t kMaxDraws = 50;

  SamplingLqAgent(GaussianLinearBelief belief, Eigen::MatrixXd q, Eigen::MatrixXd r,
                  DareOptions options = {});

  void observe(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
               const Eigen::VectorXd& next_x) override;

  const GaussianLinearBelief& belief() const { return belief_; }
  const Eigen::MatrixXd& gain() const { return gain_; }
  /// Draws discarded because no stabilizing controller existed for them.
  std::size_t rejected_draws() const { return rejected_; }

 protected:
  void resample(Rng& rng);
  Eigen::VectorXd control(const Eigen::VectorXd& x) const { return -gain_ * x; }

  GaussianLinearBelief belief_;

 private:
  Eigen::MatrixXd q_;
  Eigen::MatrixXd r_;
  DareOptions options_;
  Eigen::MatrixXd gain_;
  std::size_t rejected_ = 0;
};

class DsPsrlLqAgent final : public SamplingLqAgent {
 public:
  using SamplingLqAgent::SamplingLqAgent;
  std::string_view name() const override { return "ds_psrl"; }
  LqDecision act(Step t, const Eigen::VectorXd& x, Rng& rng) override;

 private:
  Step next_switch_ = 1;
};

struct TsdeLqState {
  Step episode_start = 1;
  Step prev_episode_len = 0;
  double log_det_at_episode_start = 0.0;
};

/// Length rule, or the row covariance determinant fell below half its value at
/// episode start (log det of the precision grew by more than log 2).
bool tsde_lq_should_switch(const TsdeLqState& state, Step t, double log_det_precision);

class TsdeLqAgent final : public SamplingLqAgent {
 public:
  using SamplingLqAgent::SamplingLqAgent;
  std::string_view name() const override { return "tsde"; }
  LqDecision act(Step t, const Eigen::VectorXd& x, Rng& rng) override;

  const TsdeLqState& state() const { return state_; }

 private:
  TsdeLqState state_;
};

class EveryStepLqAgent final : public SamplingLqAgent {
 public:
  using SamplingLqAgent::SamplingLqAgent;
  std::string_view name() const override { return "t_mod_1"; }
  LqDecision act(Step t, const Eigen::VectorXd& x, Rng& rng) override;
};

/// u = -K x with K from the Riccati solution of the true system.
class OracleLqAgent final : public LqAgent {
 public:
  explicit OracleLqAgent(Eigen::MatrixXd gain) : gain_(std::move(gain)) {}
  std::string_view name() const override { return "oracle"; }
  LqDecision act(Step t, const Eigen::VectorXd& x, Rng& rng) override;
  void observe(const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&) override {}

 private:
  Eigen::MatrixXd gain_;
};

}  // namespace dspsrl
