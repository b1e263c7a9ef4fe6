#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "dspsrl/core/errors.hpp"
#include "dspsrl/core/types.hpp"
#include "dspsrl/environments/lq.hpp"
#include "dspsrl/environments/riverswim.hpp"
#include "dspsrl/planners/dare.hpp"
#include "dspsrl/planners/relative_value_iteration.hpp"

namespace dspsrl {

enum class EnvKind { kRiverSwim, kRiverSwimDirichlet, kLq, kPoi };

std::string to_string(EnvKind kind);
/// Throws ValidationError for an unknown name.
EnvKind env_kind_from_string(const std::string& name);

/// Registered agent names: ds_psrl, tsde, t_mod_1, oracle.
const std::vector<std::string>& registered_agents();

struct PoiSettings {
  std::size_t n_pois = 5;
  std::vector<double> theta_support{1.0, 2.0, 3.0};
  double clamp = 0.05;
  std::uint64_t model_seed = 11;
};

struct ExperimentConfig {
  EnvKind env = EnvKind::kRiverSwim;
  std::vector<std::string> agents{"ds_psrl", "tsde", "t_mod_1"};
  Step horizon = 1000;
  std::size_t seeds = 10;
  std::uint64_t base_seed = 1;
  std::string out = "out";
  bool per_seed_columns = false;
  bool record_diagnostics = false;
  /// 0 = one worker per hardware thread.
  std::size_t threads = 0;
  /// "prior" draws θ* per seed from the uniform prior; otherwise the 1-based
  /// index of θ* in the support. Empty selects the environment default
  /// (index 2 for RiverSwim, prior for POI).
  std::string true_theta;

  RiverSwimConfig riverswim;
  double dirichlet_prior = 1.0;
  PoiSettings poi;
  LqDefaults lq;
  /// Prior precision per entry of [A'; B'] in units of the noise level.
  double lq_prior_precision = 1.0;
  RviOptions planner;
  DareOptions dare;

  /// Throws ValidationError on any inconsistent field.
  void validate() const;
};

/// Error in a config file, tagged with its 1-based line (0 when the problem is
/// not tied to a line).
class ConfigError : public ValidationError {
 public:
  ConfigError(const std::string& source, std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Flat `key = value` text; `#` starts a comment; lists are comma-separated.
ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Applies one `key = value` assignment; throws ValidationError for an unknown
/// key or a malformed value.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

}  // namespace dspsrl
