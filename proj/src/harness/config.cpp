#include "dspsrl/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace dspsrl {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ValidationError("empty entry in list '" + value + "'");
    out.push_back(item);
  }
  if (out.empty()) throw ValidationError("empty list");
  return out;
}

template <typename T>
T parse_number(const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ValidationError("not a valid number: '" + value + "'");
  return out;
}

bool parse_bool(const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ValidationError("not a boolean: '" + value + "'");
}

}  // namespace

std::string to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::kRiverSwim: return "riverswim";
    case EnvKind::kRiverSwimDirichlet: return "riverswim_dirichlet";
    case EnvKind::kLq: return "lq";
    case EnvKind::kPoi: return "poi";
  }
  return "unknown";
}

EnvKind env_kind_from_string(const std::string& name) {
  for (EnvKind k : {EnvKind::kRiverSwim, EnvKind::kRiverSwimDirichlet, EnvKind::kLq, EnvKind::kPoi}) {
    if (to_string(k) == name) return k;
  }
  throw ValidationError("unknown environment '" + name + "'");
}

const std::vector<std::string>& registered_agents() {
  static const std::vector<std::string> names{"ds_psrl", "tsde", "t_mod_1", "oracle"};
  return names;
}

void ExperimentConfig::validate() const {
  if (horizon < 1) throw ValidationError("horizon must be at least 1");
  if (seeds < 1) throw ValidationError("seeds must be at least 1");
  if (agents.empty()) throw ValidationError("no agents configured");
  for (const auto& a : agents) {
    const auto& reg = registered_agents();
    if (std::find(reg.begin(), reg.end(), a) == reg.end()) {
      throw ValidationError("unknown agent '" + a + "'");
    }
    if (std::count(agents.begin(), agents.end(), a) > 1) {
      throw ValidationError("agent '" + a + "' listed twice");
    }
  }
  riverswim.validate();
  if (!(dirichlet_prior > 0.0)) throw ValidationError("dirichlet.prior must be positive");
  if (!(lq_prior_precision > 0.0)) throw ValidationError("lq.prior_precision must be positive");
  if (lq.n == 0 || lq.d == 0) throw ValidationError("lq dimensions must be positive");
  if (!(lq.noise_scale > 0.0)) throw ValidationError("lq.noise_scale must be positive");
  if (!(lq.a_spectral_radius > 0.0)) throw ValidationError("lq.a_spectral_radius must be positive");
  if (!true_theta.empty() && true_theta != "prior") {
    const auto index = parse_number<std::size_t>(true_theta);
    const std::size_t size =
        env == EnvKind::kPoi ? poi.theta_support.size() : std::size_t{2};
    if (index < 1 || index > size) {
      throw ValidationError("true_theta index " + true_theta + " outside 1.." + std::to_string(size));
    }
  }
  if (env == EnvKind::kLq && !true_theta.empty()) {
    throw ValidationError("true_theta does not apply to the lq environment");
  }
}

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& message)
    : ValidationError(line > 0 ? source + ":" + std::to_string(line) + ": " + message
                               : source + ": " + message),
      line_(line) {}

namespace {

std::vector<std::string> parse_agents(const std::string& v) {
  auto names = split_list(v);
  const auto& reg = registered_agents();
  for (const auto& a : names) {
    if (std::find(reg.begin(), reg.end(), a) == reg.end()) throw ValidationError("unknown agent '" + a + "'");
    if (std::count(names.begin(), names.end(), a) > 1) throw ValidationError("agent '" + a + "' listed twice");
  }
  return names;
}

template <typename T>
T positive(T value, const std::string& key) {
  if (!(value > T{0})) throw ValidationError(key + " must be positive");
  return value;
}

double probability(double value, const std::string& key) {
  if (!(value > 0.0 && value < 1.0)) throw ValidationError(key + " must lie in (0, 1)");
  return value;
}

}  // namespace

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& v) {
  if (key == "env") c.env = env_kind_from_string(v);
  else if (key == "agents") c.agents = parse_agents(v);
  else if (key == "horizon") c.horizon = positive(parse_number<Step>(v), key);
  else if (key == "seeds") c.seeds = positive(parse_number<std::size_t>(v), key);
  else if (key == "base_seed") c.base_seed = parse_number<std::uint64_t>(v);
  else if (key == "out") c.out = v;
  else if (key == "per_seed_columns") c.per_seed_columns = parse_bool(v);
  else if (key == "record_diagnostics") c.record_diagnostics = parse_bool(v);
  else if (key == "threads") c.threads = parse_number<std::size_t>(v);
  else if (key == "true_theta") c.true_theta = v;
  else if (key == "riverswim.n_states") c.riverswim.n_states = positive(parse_number<std::size_t>(v), key);
  else if (key == "riverswim.fail_high") c.riverswim.fail_high = probability(parse_number<double>(v), key);
  else if (key == "riverswim.fail_low") c.riverswim.fail_low = probability(parse_number<double>(v), key);
  else if (key == "riverswim.left_reward") c.riverswim.left_reward = parse_number<double>(v);
  else if (key == "riverswim.right_reward") c.riverswim.right_reward = parse_number<double>(v);
  else if (key == "riverswim.contradicting_prefix") c.riverswim.contradicting_prefix = parse_number<std::size_t>(v);
  else if (key == "riverswim.stay_fraction") c.riverswim.stay_fraction = parse_number<double>(v);
  else if (key == "dirichlet.prior") c.dirichlet_prior = positive(parse_number<double>(v), key);
  else if (key == "poi.n_pois") c.poi.n_pois = parse_number<std::size_t>(v);
  else if (key == "poi.theta_support") {
    std::vector<double> support;
    for (const auto& item : split_list(v)) support.push_back(parse_number<double>(item));
    c.poi.theta_support = std::move(support);
  }
  else if (key == "poi.clamp") c.poi.clamp = parse_number<double>(v);
  else if (key == "poi.model_seed") c.poi.model_seed = parse_number<std::uint64_t>(v);
  else if (key == "lq.n") c.lq.n = parse_number<std::size_t>(v);
  else if (key == "lq.d") c.lq.d = parse_number<std::size_t>(v);
  else if (key == "lq.system_seed") c.lq.system_seed = parse_number<std::uint64_t>(v);
  else if (key == "lq.a_spectral_radius") c.lq.a_spectral_radius = parse_number<double>(v);
  else if (key == "lq.noise_scale") c.lq.noise_scale = positive(parse_number<double>(v), key);
  else if (key == "lq.prior_precision") c.lq_prior_precision = positive(parse_number<double>(v), key);
  else if (key == "planner.tol") c.planner.tol = positive(parse_number<double>(v), key);
  else if (key == "planner.max_iter") c.planner.max_iter = parse_number<std::size_t>(v);
  else if (key == "planner.aperiodicity") c.planner.aperiodicity = parse_number<double>(v);
  else if (key == "dare.tol") c.dare.tol = positive(parse_number<double>(v), key);
  else if (key == "dare.max_iter") c.dare.max_iter = parse_number<std::size_t>(v);
  else throw ValidationError("unknown key '" + key + "'");
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  ExperimentConfig config;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(source, line_no, "missing key");
    if (value.empty()) throw ConfigError(source, line_no, "missing value for '" + key + "'");
    try {
      apply_setting(config, key, value);
    } catch (const ValidationError& e) {
      throw ConfigError(source, line_no, e.what());
    }
  }
  try {
    config.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(source, 0, e.what());
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open file");
  return parse_config(in, path.string());
}

}  // namespace dspsrl
