#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dspsrl/harness/config.hpp"
#include "dspsrl/harness/experiment.hpp"

namespace dspsrl {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// SHA-1 of "blob <size>\0<content>", as git computes a file's object id.
std::string git_blob_sha1(std::string_view content);

/// Header `t,mean_regret,stderr[,seed_<s>...]`, then one row per t = 1..T.
void write_curve_csv(std::ostream& out, const RegretCurve& curve,
                     const std::vector<std::uint64_t>& seeds, bool per_seed_columns);

struct ConfigSource {
  /// Name shown in the manifest (usually the config path).
  std::string name;
  /// Raw file content; hashed and echoed.
  std::string text;
};

/// Writes `<agent>.csv` for every complete agent, `<agent>_diagnostics.jsonl`
/// when diagnostics were recorded, and `manifest.txt`. Returns true when every
/// agent completed.
bool write_outputs(const ExperimentConfig& config, const ExperimentResult& result,
                   const ConfigSource& source, const std::filesystem::path& out_dir);

}  // namespace dspsrl
