#include "dspsrl/posteriors/finite_belief.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "dspsrl/core/errors.hpp"

namespace dspsrl {

double log_sum_exp(std::span<const double> values) {
  const double hi = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(hi)) return hi;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - hi);
  return hi + std::log(acc);
}

FiniteBelief::FiniteBelief(std::vector<double> support, std::span<const double> weights)
    : support_(std::move(support)) {
  if (support_.empty() || support_.size() != weights.size()) {
    throw ValidationError("FiniteBelief: support and weights must be non-empty and equally long");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("FiniteBelief: invalid prior weight");
    total += w;
  }
  if (!(total > 0.0)) throw ValidationError("FiniteBelief: prior weights sum to zero");
  log_weights_.reserve(weights.size());
  for (double w : weights) log_weights_.push_back(std::log(w / total));
}

FiniteBelief FiniteBelief::uniform(std::vector<double> support) {
  const std::vector<double> weights(support.size(), 1.0);
  return FiniteBelief(std::move(support), weights);
}

double FiniteBelief::probability(std::size_t index) const { return std::exp(log_weights_.at(index)); }

void FiniteBelief::absorb(std::span<const double> log_likelihood) {
  if (log_likelihood.size() != log_weights_.size()) {
    throw ValidationError("FiniteBelief: likelihood vector has the wrong length");
  }
  if (std::adjacent_find(log_likelihood.begin(), log_likelihood.end(), std::not_equal_to<>()) ==
          log_likelihood.end() &&
      std::isfinite(log_likelihood.front())) {
    return;
  }
  std::vector<double> next(log_weights_.size());
  for (std::size_t i = 0; i < next.size(); ++i) next[i] = log_weights_[i] + log_likelihood[i];
  const double norm = log_sum_exp(next);
  if (!std::isfinite(norm)) {
    throw ImpossibleObservation("observation has zero likelihood under every supported parameter");
  }
  for (double& v : next) v -= norm;
  log_weights_ = std::move(next);
}

std::size_t FiniteBelief::sample_index(Rng& rng) const {
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < log_weights_.size(); ++i) {
    const double p = std::exp(log_weights_[i]);
    if (p <= 0.0) continue;
    last = i;
    acc += p;
    if (u < acc) return i;
  }
  return last;
}

FiniteBelief finite_update(const FiniteBelief& belief, const ScalarParamFamily& family,
                           const Transition& obs) {
  if (family.size() != belief.size()) {
    throw ValidationError("finite_update: belief and family have different supports");
  }
  std::vector<double> loglik(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double p = family.model(i).probability(obs.state, obs.action, obs.next_state);
    loglik[i] = p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
  }
  FiniteBelief out = belief;
  out.absorb(loglik);
  return out;
}

double finite_sample(const FiniteBelief& belief, Rng& rng) {
  return belief.support()[belief.sample_index(rng)];
}

void to_json(nlohmann::json& j, const FiniteBelief& belief) {
  std::vector<double> probs;
  for (std::size_t i = 0; i < belief.size(); ++i) probs.push_back(belief.probability(i));
  j = nlohmann::json{{"kind", "finite"},
                     {"support", std::vector<double>(belief.support().begin(), belief.support().end())},
                     {"probabilities", probs}};
}

}  // namespace dspsrl
