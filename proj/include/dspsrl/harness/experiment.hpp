#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dspsrl/agents/lq_agents.hpp"
#include "dspsrl/agents/tabular_agents.hpp"
#include "dspsrl/core/episode_log.hpp"
#include "dspsrl/environments/lq.hpp"
#include "dspsrl/environments/poi.hpp"
#include "dspsrl/environments/tabular_environment.hpp"
#include "dspsrl/harness/config.hpp"
#include "dspsrl/harness/regret.hpp"
#include "dspsrl/posteriors/tabular_posterior.hpp"

namespace dspsrl {

/// A run aborted by an agent, planner or posterior error.
class RunError : public Error {
 public:
  RunError(Step step, const std::string& what);
  Step step() const { return step_; }

 private:
  Step step_;
};

/// Seed of the i-th run of an experiment.
inline std::uint64_t run_seed(std::uint64_t base_seed, std::size_t index) { return base_seed + index; }

/// Plays `agent` against `env` for T steps from env's initial state. The
/// environment and the agent draw from separate sub-streams of `seed`.
EpisodeLog run_single(TabularEnvironment& env, TabularAgent& agent, Step horizon, std::uint64_t seed);

/// Same protocol for a linear-quadratic system started at x = 0.
LqEpisodeLog run_single(const LqSystem& system, LqAgent& agent, Step horizon, std::uint64_t seed);

/// Everything the tabular runs of one experiment share: the scalar family with
/// its cached solutions and, for POI, the passive model.
class TabularSetting {
 public:
  explicit TabularSetting(const ExperimentConfig& config);

  struct Instance {
    std::size_t true_index;
    double true_param;
    TabularMdp true_model;
    std::shared_ptr<const AvgRewardSolution> oracle;
    StateId initial_state;
    RewardMode reward_mode;
  };

  /// θ* for a run: fixed by config or drawn from the uniform prior.
  Instance instance(std::uint64_t seed) const;
  std::unique_ptr<TabularAgent> make_agent(const std::string& name, const Instance& inst) const;

  const FamilySolutions& solutions() const { return *solutions_; }
  std::shared_ptr<const FamilySolutions> shared_solutions() const { return solutions_; }
  const std::optional<PoiModel>& poi_model() const { return poi_; }

 private:
  ExperimentConfig config_;
  std::optional<PoiModel> poi_;
  std::shared_ptr<const FamilySolutions> solutions_;
};

class LqSetting {
 public:
  explicit LqSetting(const ExperimentConfig& config);

  const LqSystem& system() const { return system_; }
  const LqSolution& optimum() const { return optimum_; }
  std::unique_ptr<LqAgent> make_agent(const std::string& name) const;

 private:
  ExperimentConfig config_;
  LqSystem system_;
  LqSolution optimum_;
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  /// Optimal average reward of the run's true model (LQ: minus the optimal
  /// average cost).
  double j_star = 0.0;
  double true_param = kNoParam;
};

struct AgentOutcome {
  std::string agent;
  std::vector<SeedOutcome> runs;
  std::vector<EpisodeLog> logs;
  std::vector<LqEpisodeLog> lq_logs;
  /// Present only when every seed succeeded.
  std::optional<RegretCurve> curve;
  /// One JSON object per seed when diagnostics are recorded.
  std::vector<std::string> diagnostics;

  bool complete() const { return curve.has_value(); }
};

struct ExperimentResult {
  std::vector<AgentOutcome> agents;

  /// Throws ValidationError for an agent that was not run.
  const AgentOutcome& agent(const std::string& name) const;
};

struct RunOptions {
  /// Keep every EpisodeLog in the result (needed by the verification tools).
  bool keep_logs = true;
};

/// Runs every (agent, seed) pair over a worker pool. The result does not
/// depend on the number of workers.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace dspsrl
