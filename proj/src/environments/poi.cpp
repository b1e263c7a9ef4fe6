#include "dspsrl/environments/poi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dspsrl/core/errors.hpp"
#include "dspsrl/core/rng.hpp"

namespace dspsrl {

namespace {

constexpr int kMaxClampRounds = 10000;

void clamp_row(std::span<double> row, double lo, double hi) {
  for (int round = 0; round < kMaxClampRounds; ++round) {
    bool inside = true;
    double sum = 0.0;
    for (double& p : row) {
      if (p < lo || p > hi) inside = false;
      p = std::clamp(p, lo, hi);
      sum += p;
    }
    for (double& p : row) p /= sum;
    if (inside && std::abs(sum - 1.0) <= 1e-15) return;
  }
  for (double p : row) {
    if (p < lo - 1e-12 || p > hi + 1e-12) {
      throw ValidationError("PoiModel: clamping did not converge");
    }
  }
}

}  // namespace

PoiModel::PoiModel(std::size_t n_pois, std::vector<double> passive,
                   std::vector<double> theta_support, double clamp)
    : n_pois_(n_pois),
      passive_(std::move(passive)),
      theta_support_(std::move(theta_support)),
      clamp_(clamp) {
  if (n_pois_ < 2) throw ValidationError("PoiModel: need at least two POIs");
  if (passive_.size() != n_pois_ * n_pois_) {
    throw ValidationError("PoiModel: passive matrix must be n_pois x n_pois");
  }
  if (!(clamp_ > 0.0 && clamp_ < 0.5)) throw ValidationError("PoiModel: clamp must lie in (0, 0.5)");
  if (clamp_ * static_cast<double>(n_pois_) > 1.0) {
    throw ValidationError("PoiModel: clamp * n_pois exceeds 1, no row can satisfy the bounds");
  }
  if (theta_support_.empty()) throw ValidationError("PoiModel: empty theta support");
  for (double theta : theta_support_) {
    if (!(theta >= 1.0)) {
      throw ValidationError("PoiModel: propensity " + std::to_string(theta) + " is below 1");
    }
  }
  for (std::size_t s = 0; s < n_pois_; ++s) {
    std::span<double> row(passive_.data() + s * n_pois_, n_pois_);
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw ValidationError("PoiModel: negative or non-finite passive entry in row " +
                              std::to_string(s));
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kInputTol) {
      throw ValidationError("PoiModel: passive row " + std::to_string(s) + " sums to " +
                            std::to_string(sum));
    }
    clamp_row(row, clamp_, 1.0 - clamp_);
  }
}

PoiModel random_poi_model(std::size_t n_pois, std::vector<double> theta_support, double clamp,
                          std::uint64_t seed) {
  Rng rng = substream(seed, 0, "poi-passive");
  std::vector<double> passive(n_pois * n_pois);
  for (std::size_t s = 0; s < n_pois; ++s) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n_pois; ++j) {
      passive[s * n_pois + j] = rng.gamma(1.0);
      sum += passive[s * n_pois + j];
    }
    for (std::size_t j = 0; j < n_pois; ++j) passive[s * n_pois + j] /= sum;
  }
  return PoiModel(n_pois, std::move(passive), std::move(theta_support), clamp);
}

std::vector<double> poi_transition_probs(const PoiModel& model, std::size_t current_poi,
                                         std::size_t action, double theta) {
  if (!(theta >= 1.0)) {
    throw DomainError("poi_transition_probs: theta must be >= 1, got " + std::to_string(theta));
  }
  if (current_poi >= model.n_pois() || action >= model.n_pois()) {
    throw ValidationError("poi_transition_probs: POI index out of range");
  }
  const auto passive = model.passive_row(current_poi);
  const double p = passive[action];
  const double lifted = std::pow(p, 1.0 / theta);
  const double scale = (1.0 - lifted) / (1.0 - p);
  std::vector<double> row(passive.begin(), passive.end());
  for (std::size_t s = 0; s < row.size(); ++s) row[s] = s == action ? lifted : passive[s] * scale;
  return row;
}

double poi_reward(std::size_t action, std::size_t realized_next) {
  return action == realized_next ? 1.0 : 0.0;
}

TabularMdp build_poi_mdp(const PoiModel& model, double theta) {
  const std::size_t n = model.n_pois();
  std::vector<double> transition(n * n * n);
  std::vector<double> reward(n * n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < n; ++a) {
      const auto row = poi_transition_probs(model, s, a, theta);
      std::copy(row.begin(), row.end(), transition.begin() + static_cast<long>((s * n + a) * n));
      reward[s * n + a] = row[a];
    }
  }
  return TabularMdp(n, n, std::move(transition), std::move(reward));
}

ScalarParamFamily build_poi_family(const PoiModel& model) {
  std::vector<double> support(model.theta_support().begin(), model.theta_support().end());
  std::vector<TabularMdp> models;
  models.reserve(support.size());
  for (double theta : support) models.push_back(build_poi_mdp(model, theta));
  return ScalarParamFamily(std::move(support), std::move(models), /*shared_reward=*/false);
}

}  // namespace dspsrl
