#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dspsrl/harness/config.hpp"
#include "dspsrl/verify/sampling_identity.hpp"

namespace dspsrl {

struct CheckRow {
  std::string name;
  CheckStatus status = CheckStatus::kInconclusive;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyOptions {
  /// Scalar RiverSwim setting for the posterior-sampling, Δ_t and
  /// posterior-information checks.
  ExperimentConfig riverswim;
  /// POI setting for the Lipschitz, Pinsker-constant and concentration checks.
  ExperimentConfig poi;
  std::uint64_t base_seed = 1;
  std::size_t identity_runs = 2000;
  std::size_t concentration_seeds = 200;
  Step short_horizon = 1024;
  Step long_horizon = 4096;
  std::size_t delta_seeds = 100;
  Step delta_horizon = 2000;
  std::size_t pinsker_tuples = 10'000;
};

/// Default options: RiverSwim and POI environments at their default settings.
VerifyOptions default_verify_options();

/// Runs every check in a fixed order; each row is independent of the others.
std::vector<CheckRow> run_verify_suite(const VerifyOptions& options);

/// Header `check,status,value,threshold,detail`.
void write_verify_csv(std::ostream& out, const std::vector<CheckRow>& rows);

/// One aligned line per check, then a count of each status.
void write_verify_summary(std::ostream& out, const std::vector<CheckRow>& rows);

}  // namespace dspsrl
