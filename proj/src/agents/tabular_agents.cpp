#include "dspsrl/agents/tabular_agents.hpp"

#include <string>

#include "dspsrl/core/errors.hpp"

namespace dspsrl {

namespace {

void require_posterior(const std::unique_ptr<TabularPosterior>& p, const char* who) {
  if (!p) throw ValidationError(std::string(who) + ": posterior must not be null");
}

void require_started(Step t) {
  if (t < 1) throw ValidationError("agent: time steps start at 1");
}

}  // namespace

bool DoublingSchedule::fires(Step t) {
  if (t > next_) {
    throw ValidationError("DoublingSchedule: step " + std::to_string(t) + " skipped switch at " +
                          std::to_string(next_));
  }
  if (t < next_) return false;
  next_ *= 2;
  return true;
}

std::vector<Step> doubling_switch_times(Step horizon) {
  std::vector<Step> out;
  for (Step l = 1; l <= horizon; l *= 2) out.push_back(l);
  return out;
}

DsPsrlAgent::DsPsrlAgent(std::unique_ptr<TabularPosterior> posterior) : posterior_(std::move(posterior)) {
  require_posterior(posterior_, "DsPsrlAgent");
}

Decision DsPsrlAgent::act(Step t, StateId x, Rng& rng) {
  require_started(t);
  const bool switched = schedule_.fires(t);
  if (switched) current_ = posterior_->draw(rng);
  return {current_.solution->action(x), switched, current_.param};
}

TsdeState::TsdeState(std::size_t n_states, std::size_t n_actions_)
    : n_actions(n_actions_),
      visit_counts(n_states * n_actions_, 0),
      counts_at_episode_start(n_states * n_actions_, 0) {}

void TsdeState::record_visit(StateId s, ActionId a) {
  ++visit_counts.at(static_cast<std::size_t>(s) * n_actions + a);
}

void TsdeState::start_episode(Step t) {
  prev_episode_len = t - episode_start;
  episode_start = t;
  counts_at_episode_start = visit_counts;
}

bool tsde_should_switch(const TsdeState& state, Step t) {
  if (t - state.episode_start >= state.prev_episode_len + 1) return true;
  for (std::size_t k = 0; k < state.visit_counts.size(); ++k) {
    const std::size_t start = state.counts_at_episode_start[k];
    if (start == 0 ? state.visit_counts[k] >= 1 : state.visit_counts[k] >= 2 * start) return true;
  }
  return false;
}

TsdeAgent::TsdeAgent(std::unique_ptr<TabularPosterior> posterior, std::size_t n_states,
                     std::size_t n_actions)
    : posterior_(std::move(posterior)), state_(n_states, n_actions) {
  require_posterior(posterior_, "TsdeAgent");
}

Decision TsdeAgent::act(Step t, StateId x, Rng& rng) {
  require_started(t);
  bool switched = false;
  if (t == 1) {
    switched = true;
  } else if (tsde_should_switch(state_, t)) {
    state_.start_episode(t);
    switched = true;
  }
  if (switched) current_ = posterior_->draw(rng);
  return {current_.solution->action(x), switched, current_.param};
}

void TsdeAgent::observe(const Transition& obs) {
  state_.record_visit(obs.state, obs.action);
  posterior_->observe(obs);
}

EveryStepAgent::EveryStepAgent(std::unique_ptr<TabularPosterior> posterior)
    : posterior_(std::move(posterior)) {
  require_posterior(posterior_, "EveryStepAgent");
}

Decision EveryStepAgent::act(Step t, StateId x, Rng& rng) {
  require_started(t);
  const PolicyDraw draw = posterior_->draw(rng);
  return {draw.solution->action(x), true, draw.param};
}

OracleAgent::OracleAgent(std::shared_ptr<const AvgRewardSolution> solution, double true_param)
    : solution_(std::move(solution)), param_(true_param) {
  if (!solution_) throw ValidationError("OracleAgent: solution must not be null");
}

Decision OracleAgent::act(Step t, StateId x, Rng&) {
  require_started(t);
  return {solution_->action(x), t == 1, param_};
}

}  // namespace dspsrl
