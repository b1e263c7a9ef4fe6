#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dspsrl/harness/config.hpp"

namespace dspsrl {

enum class CheckStatus { kPass, kFail, kInconclusive };

std::string to_string(CheckStatus status);

struct SamplingIdentityReport {
  CheckStatus status = CheckStatus::kInconclusive;
  std::size_t switch_index = 0;
  std::size_t n_runs = 0;
  std::vector<double> support;
  /// Counts of θ* and of the draw at the switch, per support atom.
  std::vector<std::size_t> true_counts;
  std::vector<std::size_t> sampled_counts;
  /// χ² homogeneity test of the two marginals.
  double chi2 = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  /// Goodness of fit of the sampled marginal against the uniform prior.
  double prior_fit_p_value = 1.0;
  std::string detail;
};

/// Upper tail of the χ² distribution with `dof` degrees of freedom.
double chi2_survival(double statistic, std::size_t dof);

/// χ² homogeneity statistic of a 2 x K table (columns with no counts dropped).
/// Returns {statistic, dof}.
std::pair<double, std::size_t> chi2_homogeneity(const std::vector<std::size_t>& a,
                                                const std::vector<std::size_t>& b);

/// Runs DS-PSRL on `config`'s scalar environment for n_runs seeds with θ*
/// drawn from the prior and T = 2^(switch_index - 1), then compares the
/// marginal of θ* with the marginal of the draw made at that switch. Passes
/// when p > alpha. Fewer than 30 runs per support atom is inconclusive.
SamplingIdentityReport sampling_identity_test(const ExperimentConfig& config, std::size_t switch_index,
                                      std::size_t n_runs, double alpha = 1e-3);

}  // namespace dspsrl
