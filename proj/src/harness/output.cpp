#include "dspsrl/harness/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace dspsrl {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string git_blob_sha1(std::string_view content) {
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw Error("git_blob_sha1: cannot allocate digest context");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                  EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest.data(), &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw Error("git_blob_sha1: digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

void write_curve_csv(std::ostream& out, const RegretCurve& curve,
                     const std::vector<std::uint64_t>& seeds, bool per_seed_columns) {
  if (per_seed_columns && seeds.size() != curve.n_seeds()) {
    throw ValidationError("write_curve_csv: one seed label per curve required");
  }
  out << "t,mean_regret,stderr";
  if (per_seed_columns) {
    for (auto s : seeds) out << ",seed_" << s;
  }
  out << '\n';
  for (std::size_t t = 0; t < curve.length(); ++t) {
    out << (t + 1) << ',' << format_double(curve.mean[t]) << ',' << format_double(curve.std_error[t]);
    if (per_seed_columns) {
      for (const auto& c : curve.per_seed) out << ',' << format_double(c[t]);
    }
    out << '\n';
  }
}

bool write_outputs(const ExperimentConfig& config, const ExperimentResult& result,
                   const ConfigSource& source, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < config.seeds; ++i) seeds.push_back(run_seed(config.base_seed, i));

  bool all_complete = true;
  std::ostringstream manifest;
  manifest << "config_file = " << source.name << '\n';
  manifest << "config_hash = " << git_blob_sha1(source.text) << '\n';
  manifest << "env = " << to_string(config.env) << '\n';
  manifest << "horizon = " << config.horizon << '\n';
  manifest << "seeds = ";
  for (std::size_t i = 0; i < seeds.size(); ++i) manifest << (i ? "," : "") << seeds[i];
  manifest << '\n';

  for (const auto& outcome : result.agents) {
    if (outcome.complete()) {
      std::ofstream csv(out_dir / (outcome.agent + ".csv"), std::ios::binary);
      write_curve_csv(csv, *outcome.curve, seeds, config.per_seed_columns);
      if (!csv) throw Error("cannot write " + (out_dir / (outcome.agent + ".csv")).string());
      manifest << "agent." << outcome.agent << ".status = complete\n";
    } else {
      all_complete = false;
      std::size_t failed = 0;
      for (const auto& run : outcome.runs) failed += run.ok ? 0 : 1;
      manifest << "agent." << outcome.agent << ".status = failed (" << failed << " of "
               << outcome.runs.size() << " seeds), csv not written\n";
      for (const auto& run : outcome.runs) {
        if (!run.ok) manifest << "agent." << outcome.agent << ".error.seed_" << run.seed << " = " << run.error << '\n';
      }
    }
    if (!outcome.diagnostics.empty()) {
      std::ofstream diag(out_dir / (outcome.agent + "_diagnostics.jsonl"), std::ios::binary);
      for (const auto& line : outcome.diagnostics) diag << line << '\n';
    }
  }

  manifest << "# config echo\n";
  std::istringstream echo(source.text);
  std::string line;
  while (std::getline(echo, line)) manifest << "config | " << line << '\n';

  std::ofstream file(out_dir / "manifest.txt", std::ios::binary);
  file << manifest.str();
  if (!file) throw Error("cannot write " + (out_dir / "manifest.txt").string());
  return all_complete;
}

}  // namespace dspsrl
