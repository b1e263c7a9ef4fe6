#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dspsrl/core/rng.hpp"
#include "dspsrl/core/types.hpp"
#include "dspsrl/planners/relative_value_iteration.hpp"
#include "dspsrl/posteriors/tabular_posterior.hpp"

namespace dspsrl {

struct Decision {
  ActionId action = 0;
  /// A new model was sampled at this step.
  bool switched = false;
  /// Parameter in force after this step's decision (NaN when not scalar).
  double param = 0.0;
};

/// Online controller for a finite MDP. act() is called for t = 1, 2, ... in
/// order and each call is followed by observe() on the realized transition.
class TabularAgent {
 public:
  virtual ~TabularAgent() = default;

  virtual std::string_view name() const = 0;
  virtual Decision act(Step t, StateId x, Rng& rng) = 0;
  virtual void observe(const Transition& obs) = 0;
  /// nullptr for agents that do not learn.
  virtual const TabularPosterior* posterior() const { return nullptr; }
};

/// Resample exactly at t = 1, 2, 4, 8, ...
class DoublingSchedule {
 public:
  /// True iff t is the next switch time; advances the schedule when it is.
  /// Throws ValidationError when t has skipped past the pending switch.
  bool fires(Step t);
  Step next() const { return next_; }

 private:
  Step next_ = 1;
};

/// Switch steps of the doubling schedule up to T.
std::vector<Step> doubling_switch_times(Step horizon);

class DsPsrlAgent final : public TabularAgent {
 public:
  explicit DsPsrlAgent(std::unique_ptr<TabularPosterior> posterior);

  std::string_view name() const override { return "ds_psrl"; }
  Decision act(Step t, StateId x, Rng& rng) override;
  void observe(const Transition& obs) override { posterior_->observe(obs); }
  const TabularPosterior* posterior() const override { return posterior_.get(); }

  const DoublingSchedule& schedule() const { return schedule_; }

 private:
  std::unique_ptr<TabularPosterior> posterior_;
  DoublingSchedule schedule_;
  PolicyDraw current_{};
};

/// Episode bookkeeping of Thompson sampling with dynamic episodes.
struct TsdeState {
  TsdeState(std::size_t n_states, std::size_t n_actions);

  std::size_t n_actions;
  Step episode_start = 1;
  Step prev_episode_len = 0;
  std::vector<std::size_t> visit_counts;
  std::vector<std::size_t> counts_at_episode_start;

  void record_visit(StateId s, ActionId a);
  void start_episode(Step t);
};

/// Length rule (t - start >= previous length + 1) or doubling rule (some pair
/// reached twice its count at episode start; a pair unvisited at episode start
/// counts as doubled on its first visit).
bool tsde_should_switch(const TsdeState& state, Step t);

class TsdeAgent final : public TabularAgent {
 public:
  TsdeAgent(std::unique_ptr<TabularPosterior> posterior, std::size_t n_states, std::size_t n_actions);

  std::string_view name() const override { return "tsde"; }
  Decision act(Step t, StateId x, Rng& rng) override;
  void observe(const Transition& obs) override;
  const TabularPosterior* posterior() const override { return posterior_.get(); }

  const TsdeState& state() const { return state_; }

 private:
  std::unique_ptr<TabularPosterior> posterior_;
  TsdeState state_;
  PolicyDraw current_{};
};

/// t-mod-1: a fresh draw every step.
class EveryStepAgent final : public TabularAgent {
 public:
  explicit EveryStepAgent(std::unique_ptr<TabularPosterior> posterior);

  std::string_view name() const override { return "t_mod_1"; }
  Decision act(Step t, StateId x, Rng& rng) override;
  void observe(const Transition& obs) override { posterior_->observe(obs); }
  const TabularPosterior* posterior() const override { return posterior_.get(); }

 private:
  std::unique_ptr<TabularPosterior> posterior_;
};

/// Plays the optimal policy of the true model; "switches" only at t = 1.
class OracleAgent final : public TabularAgent {
 public:
  OracleAgent(std::shared_ptr<const AvgRewardSolution> solution, double true_param);

  std::string_view name() const override { return "oracle"; }
  Decision act(Step t, StateId x, Rng& rng) override;
  void observe(const Transition&) override {}

 private:
  std::shared_ptr<const AvgRewardSolution> solution_;
  double param_;
};

}  // namespace dspsrl
