#include "dspsrl/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <nlohmann/json.hpp>

#include "dspsrl/environments/riverswim.hpp"

namespace dspsrl {

namespace {

ScalarParamFamily make_family(const ExperimentConfig& config, const std::optional<PoiModel>& poi) {
  if (config.env == EnvKind::kPoi) return build_poi_family(*poi);
  return build_scalar_family(config.riverswim);
}

template <typename F>
auto at_step(Step t, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const RunError&) {
    throw;
  } catch (const std::exception& e) {
    throw RunError(t, e.what());
  }
}

}  // namespace

RunError::RunError(Step step, const std::string& what)
    : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

EpisodeLog run_single(TabularEnvironment& env, TabularAgent& agent, Step horizon, std::uint64_t seed) {
  if (horizon < 1) throw ValidationError("run_single: horizon must be at least 1");
  Rng env_rng = substream(seed, 0, "env");
  Rng agent_rng = substream(seed, 0, "agent:" + std::string(agent.name()));
  EpisodeLog log;
  log.seed = seed;
  log.transitions.reserve(static_cast<std::size_t>(horizon));
  env.reset();
  for (Step t = 1; t <= horizon; ++t) {
    const StateId x = env.state();
    const Decision d = at_step(t, [&] { return agent.act(t, x, agent_rng); });
    if (d.switched) {
      log.switch_times.push_back(t);
      log.sampled_params.push_back(d.param);
    }
    const auto [next, reward] = at_step(t, [&] { return env.step(d.action, env_rng); });
    const Transition tr{t, x, d.action, next, reward};
    at_step(t, [&] { agent.observe(tr); });
    log.transitions.push_back(tr);
  }
  return log;
}

LqEpisodeLog run_single(const LqSystem& system, LqAgent& agent, Step horizon, std::uint64_t seed) {
  if (horizon < 1) throw ValidationError("run_single: horizon must be at least 1");
  Rng env_rng = substream(seed, 0, "env");
  Rng agent_rng = substream(seed, 0, "agent:" + std::string(agent.name()));
  LqEpisodeLog log;
  log.seed = seed;
  log.costs.reserve(static_cast<std::size_t>(horizon));
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(system.n()));
  for (Step t = 1; t <= horizon; ++t) {
    const LqDecision d = at_step(t, [&] { return agent.act(t, x, agent_rng); });
    if (d.switched) log.switch_times.push_back(t);
    LqStepResult step = at_step(t, [&] { return lq_step(system, x, d.control, env_rng); });
    if (!step.next_state.allFinite() || !std::isfinite(step.cost)) {
      throw RunError(t, "state diverged");
    }
    at_step(t, [&] { agent.observe(x, d.control, step.next_state); });
    log.costs.push_back(step.cost);
    x = std::move(step.next_state);
  }
  return log;
}

TabularSetting::TabularSetting(const ExperimentConfig& config) : config_(config) {
  if (config_.env == EnvKind::kLq) throw ValidationError("TabularSetting: lq is not a tabular environment");
  if (config_.env == EnvKind::kPoi) {
    poi_ = random_poi_model(config_.poi.n_pois, config_.poi.theta_support, config_.poi.clamp,
                            config_.poi.model_seed);
  }
  solutions_ = std::make_shared<const FamilySolutions>(make_family(config_, poi_), config_.planner);
}

TabularSetting::Instance TabularSetting::instance(std::uint64_t seed) const {
  const ScalarParamFamily& family = solutions_->family();
  std::string choice = config_.true_theta;
  if (choice.empty()) choice = config_.env == EnvKind::kPoi ? "prior" : "2";
  std::size_t index = 0;
  if (choice == "prior") {
    Rng rng = substream(seed, 0, "theta");
    const std::vector<double> uniform(family.size(), 1.0 / static_cast<double>(family.size()));
    index = categorical_sample(uniform, rng);
  } else {
    index = std::stoul(choice) - 1;
  }
  return Instance{index,
                  family.support()[index],
                  family.model(index),
                  solutions_->solution(index),
                  0,
                  config_.env == EnvKind::kPoi ? RewardMode::kFollowIndicator : RewardMode::kTable};
}

std::unique_ptr<TabularAgent> TabularSetting::make_agent(const std::string& name,
                                                        const Instance& inst) const {
  if (name == "oracle") return std::make_unique<OracleAgent>(inst.oracle, inst.true_param);
  auto posterior = [&]() -> std::unique_ptr<TabularPosterior> {
    if (config_.env == EnvKind::kRiverSwimDirichlet) {
      return std::make_unique<DirichletPosterior>(
          DirichletBelief::on_support_of(inst.true_model, config_.dirichlet_prior),
          inst.true_model.rewards(), config_.planner);
    }
    const auto support = solutions_->family().support();
    return std::make_unique<FinitePosterior>(
        solutions_, FiniteBelief::uniform(std::vector<double>(support.begin(), support.end())));
  };
  if (name == "ds_psrl") return std::make_unique<DsPsrlAgent>(posterior());
  if (name == "tsde") {
    return std::make_unique<TsdeAgent>(posterior(), inst.true_model.n_states(),
                                       inst.true_model.n_actions());
  }
  if (name == "t_mod_1") return std::make_unique<EveryStepAgent>(posterior());
  throw ValidationError("unknown agent '" + name + "'");
}

LqSetting::LqSetting(const ExperimentConfig& config)
    : config_(config),
      system_(default_lq_system(config.lq)),
      optimum_(solve_dare(system_.a(), system_.b(), system_.q(), system_.r(), system_.noise_cov(),
                          config.dare)) {}

std::unique_ptr<LqAgent> LqSetting::make_agent(const std::string& name) const {
  if (name == "oracle") return std::make_unique<OracleLqAgent>(optimum_.gain);
  auto belief = GaussianLinearBelief::isotropic_prior(system_.n(), system_.d(),
                                                      config_.lq_prior_precision, system_.noise_cov());
  if (name == "ds_psrl") {
    return std::make_unique<DsPsrlLqAgent>(std::move(belief), system_.q(), system_.r(), config_.dare);
  }
  if (name == "tsde") {
    return std::make_unique<TsdeLqAgent>(std::move(belief), system_.q(), system_.r(), config_.dare);
  }
  if (name == "t_mod_1") {
    return std::make_unique<EveryStepLqAgent>(std::move(belief), system_.q(), system_.r(), config_.dare);
  }
  throw ValidationError("unknown agent '" + name + "'");
}

const AgentOutcome& ExperimentResult::agent(const std::string& name) const {
  for (const auto& a : agents) {
    if (a.agent == name) return a;
  }
  throw ValidationError("agent '" + name + "' was not part of the experiment");
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const bool is_lq = config.env == EnvKind::kLq;
  std::optional<TabularSetting> tabular;
  std::optional<LqSetting> lq;
  if (is_lq) {
    lq.emplace(config);
  } else {
    tabular.emplace(config);
  }

  const std::size_t n_agents = config.agents.size();
  const std::size_t n_seeds = config.seeds;
  ExperimentResult result;
  std::vector<std::vector<std::vector<double>>> regrets(n_agents, std::vector<std::vector<double>>(n_seeds));
  for (const auto& name : config.agents) {
    AgentOutcome outcome;
    outcome.agent = name;
    outcome.runs.resize(n_seeds);
    if (options.keep_logs) {
      if (is_lq) outcome.lq_logs.resize(n_seeds);
      else outcome.logs.resize(n_seeds);
    }
    if (config.record_diagnostics) outcome.diagnostics.resize(n_seeds);
    result.agents.push_back(std::move(outcome));
  }

  auto run_job = [&](std::size_t job) {
    const std::size_t a = job / n_seeds;
    const std::size_t i = job % n_seeds;
    AgentOutcome& outcome = result.agents[a];
    SeedOutcome& run = outcome.runs[i];
    run.seed = run_seed(config.base_seed, i);
    nlohmann::json diag;
    try {
      if (is_lq) {
        auto agent = lq->make_agent(outcome.agent);
        LqEpisodeLog log = run_single(lq->system(), *agent, config.horizon, run.seed);
        run.j_star = -lq->optimum().avg_cost;
        regrets[a][i] = compute_cost_regret(log, lq->optimum().avg_cost);
        if (config.record_diagnostics) {
          diag = {{"switch_times", log.switch_times}};
          if (const auto* s = dynamic_cast<const SamplingLqAgent*>(agent.get())) {
            diag["rejected_draws"] = s->rejected_draws();
            nlohmann::json belief;
            to_json(belief, s->belief());
            diag["final_belief"] = belief;
          }
        }
        if (options.keep_logs) outcome.lq_logs[i] = std::move(log);
      } else {
        const auto inst = tabular->instance(run.seed);
        TabularEnvironment env(inst.true_model, inst.initial_state, inst.reward_mode);
        auto agent = tabular->make_agent(outcome.agent, inst);
        EpisodeLog log = run_single(env, *agent, config.horizon, run.seed);
        log.true_param = inst.true_param;
        run.true_param = inst.true_param;
        run.j_star = inst.oracle->gain;
        regrets[a][i] = compute_regret(log, run.j_star);
        if (config.record_diagnostics) {
          diag = {{"true_param", inst.true_param},
                  {"switch_times", log.switch_times},
                  {"sampled_params", log.sampled_params}};
          if (const auto* post = agent->posterior()) {
            nlohmann::json belief;
            post->snapshot(belief);
            diag["final_belief"] = belief;
          }
        }
        if (options.keep_logs) outcome.logs[i] = std::move(log);
      }
      run.ok = true;
    } catch (const std::exception& e) {
      run.ok = false;
      run.error = e.what();
      regrets[a][i].clear();
    }
    if (config.record_diagnostics) {
      diag["agent"] = outcome.agent;
      diag["seed"] = run.seed;
      diag["j_star"] = run.j_star;
      diag["ok"] = run.ok;
      if (!run.ok) diag["error"] = run.error;
      outcome.diagnostics[i] = diag.dump();
    }
  };

  const std::size_t n_jobs = n_agents * n_seeds;
  std::size_t n_workers = config.threads > 0 ? config.threads
                                             : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  n_workers = std::min(n_workers, n_jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next.fetch_add(1); job < n_jobs; job = next.fetch_add(1)) run_job(job);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t a = 0; a < n_agents; ++a) {
    auto& outcome = result.agents[a];
    const bool all_ok = std::all_of(outcome.runs.begin(), outcome.runs.end(),
                                    [](const SeedOutcome& r) { return r.ok; });
    if (all_ok) outcome.curve = aggregate(std::move(regrets[a]));
  }
  return result;
}

}  // namespace dspsrl
