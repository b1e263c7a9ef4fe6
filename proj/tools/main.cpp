#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dspsrl/harness/config.hpp"
#include "dspsrl/harness/experiment.hpp"
#include "dspsrl/harness/output.hpp"
#include "dspsrl/verify/suite.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kConfigError = 1;
constexpr int kRunFailed = 3;

struct Overrides {
  std::vector<std::pair<std::string, std::string>> settings;

  void add(const std::string& key, const std::string& value) { settings.emplace_back(key, value); }
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dspsrl::ConfigError(path.string(), 0, "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// Parses the file, then applies command-line overrides; the overrides are
// appended to the echoed text so the manifest reproduces the effective run.
dspsrl::ExperimentConfig effective_config(const std::string& path, const Overrides& overrides,
                                          dspsrl::ConfigSource& source) {
  source.name = path;
  source.text = read_file(path);
  std::istringstream in(source.text);
  dspsrl::ExperimentConfig config = dspsrl::parse_config(in, path);
  if (!overrides.settings.empty()) {
    if (!source.text.empty() && source.text.back() != '\n') source.text += '\n';
    source.text += "# command-line overrides\n";
    for (const auto& [key, value] : overrides.settings) {
      try {
        dspsrl::apply_setting(config, key, value);
      } catch (const dspsrl::ValidationError& e) {
        throw dspsrl::ConfigError("command line", 0, "--" + key + ": " + e.what());
      }
      source.text += key + " = " + value + '\n';
    }
    config.validate();
  }
  return config;
}

int run_command(const std::string& config_path, const Overrides& overrides) {
  dspsrl::ConfigSource source;
  dspsrl::ExperimentConfig config;
  try {
    config = effective_config(config_path, overrides, source);
  } catch (const dspsrl::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  dspsrl::RunOptions options;
  options.keep_logs = false;
  const dspsrl::ExperimentResult result = dspsrl::run_experiment(config, options);
  const bool complete = dspsrl::write_outputs(config, result, source, config.out);
  for (const auto& agent : result.agents) {
    std::cout << agent.agent << ": " << (agent.complete() ? "complete" : "FAILED") << '\n';
    for (const auto& run : agent.runs) {
      if (!run.ok) std::cerr << "  seed " << run.seed << ": " << run.error << '\n';
    }
  }
  std::cout << "outputs in " << config.out << '\n';
  return complete ? 0 : kRunFailed;
}

int verify_command(const std::string& riverswim_path, const std::string& poi_path,
                   const std::string& out_dir, std::uint64_t seed, std::size_t runs,
                   std::size_t seeds) {
  dspsrl::VerifyOptions options = dspsrl::default_verify_options();
  try {
    if (!riverswim_path.empty()) options.riverswim = dspsrl::load_config(riverswim_path);
    if (!poi_path.empty()) options.poi = dspsrl::load_config(poi_path);
  } catch (const dspsrl::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  if (options.riverswim.env != dspsrl::EnvKind::kRiverSwim) {
    std::cerr << "error: --riverswim-config must select env = riverswim\n";
    return kConfigError;
  }
  if (options.poi.env != dspsrl::EnvKind::kPoi) {
    std::cerr << "error: --poi-config must select env = poi\n";
    return kConfigError;
  }
  options.base_seed = seed;
  options.identity_runs = runs;
  options.concentration_seeds = seeds;
  options.delta_seeds = seeds;
  const auto rows = dspsrl::run_verify_suite(options);
  std::filesystem::create_directories(out_dir);
  const auto csv_path = std::filesystem::path(out_dir) / "verify.csv";
  std::ofstream csv(csv_path, std::ios::binary);
  dspsrl::write_verify_csv(csv, rows);
  if (!csv) {
    std::cerr << "error: cannot write " << csv_path.string() << '\n';
    return kConfigError;
  }
  dspsrl::write_verify_summary(std::cout, rows);
  for (const auto& row : rows) {
    if (row.status == dspsrl::CheckStatus::kFail) return kRunFailed;
  }
  return 0;
}

void list_envs() {
  const dspsrl::ExperimentConfig d;
  const auto& rs = d.riverswim;
  std::cout << "riverswim            scalar RiverSwim, theta in {1, 2}; n_states=" << rs.n_states
            << " contradicting_prefix=" << rs.contradicting_prefix << '\n'
            << "riverswim_dirichlet  RiverSwim with independent Dirichlet rows on the known support\n"
            << "lq                   linear-quadratic control; n=" << d.lq.n << " d=" << d.lq.d << '\n'
            << "poi                  points-of-interest recommendation; n_pois=" << d.poi.n_pois
            << '\n';
  std::cout << "agents:";
  for (const auto& name : dspsrl::registered_agents()) std::cout << ' ' << name;
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Posterior-sampling RL experiments with deterministic schedules"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment grid from a config file");
  std::string config_path;
  run->add_option("--config", config_path, "config file")->required();
  std::uint64_t seed = 0;
  dspsrl::Step horizon = 0;
  std::size_t seeds = 0;
  std::string out;
  std::size_t threads = 0;
  bool per_seed = false;
  auto* seed_opt = run->add_option("--seed", seed, "base seed");
  auto* horizon_opt = run->add_option("--horizon", horizon, "horizon T")->check(CLI::PositiveNumber);
  auto* seeds_opt = run->add_option("--seeds", seeds, "number of seeds")->check(CLI::PositiveNumber);
  auto* out_opt = run->add_option("--out", out, "output directory");
  auto* threads_opt = run->add_option("--threads", threads, "worker threads (0 = hardware)");
  run->add_flag("--per-seed", per_seed, "add one regret column per seed");

  auto* verify = app.add_subcommand("verify", "run the numerical checks of the model assumptions");
  std::string riverswim_path;
  std::string poi_path;
  std::string verify_out = "verify_out";
  std::uint64_t verify_seed = 1;
  std::size_t verify_runs = 2000;
  std::size_t verify_seeds = 200;
  verify->add_option("--riverswim-config", riverswim_path, "scalar RiverSwim config");
  verify->add_option("--poi-config", poi_path, "POI config");
  verify->add_option("--out", verify_out, "output directory")->capture_default_str();
  verify->add_option("--seed", verify_seed, "base seed")->capture_default_str();
  verify->add_option("--runs", verify_runs, "runs per posterior-sampling test")->capture_default_str();
  verify->add_option("--seeds", verify_seeds, "seeds for concentration and Delta_t checks")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  app.add_subcommand("list-envs", "list environments and agents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*run) {
      Overrides overrides;
      if (*seed_opt) overrides.add("base_seed", std::to_string(seed));
      if (*horizon_opt) overrides.add("horizon", std::to_string(horizon));
      if (*seeds_opt) overrides.add("seeds", std::to_string(seeds));
      if (*out_opt) overrides.add("out", out);
      if (*threads_opt) overrides.add("threads", std::to_string(threads));
      if (per_seed) overrides.add("per_seed_columns", "true");
      return run_command(config_path, overrides);
    }
    if (*verify) {
      return verify_command(riverswim_path, poi_path, verify_out, verify_seed, verify_runs,
                            verify_seeds);
    }
    list_envs();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRunFailed;
  }
}
