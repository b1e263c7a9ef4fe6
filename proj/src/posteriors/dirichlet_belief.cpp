#include "dspsrl/posteriors/dirichlet_belief.hpp"

#include <string>

#include <nlohmann/json.hpp>

#include "dspsrl/core/errors.hpp"

namespace dspsrl {

DirichletBelief::DirichletBelief(std::size_t n_states, std::size_t n_actions,
                                 std::vector<double> alpha, std::vector<std::uint8_t> mask)
    : n_states_(n_states), n_actions_(n_actions), alpha_(std::move(alpha)), mask_(std::move(mask)) {
  const std::size_t size = n_states_ * n_actions_ * n_states_;
  if (size == 0 || alpha_.size() != size || mask_.size() != size) {
    throw ValidationError("DirichletBelief: alpha and mask must both be [S x A x S]");
  }
  for (std::size_t row = 0; row < n_states_ * n_actions_; ++row) {
    bool any = false;
    for (std::size_t next = 0; next < n_states_; ++next) {
      const std::size_t k = row * n_states_ + next;
      if (mask_[k]) {
        if (!(alpha_[k] > 0.0)) throw ValidationError("DirichletBelief: non-positive alpha on support");
        any = true;
      } else if (alpha_[k] != 0.0) {
        throw ValidationError("DirichletBelief: nonzero alpha outside the support mask");
      }
    }
    if (!any) {
      throw ValidationError("DirichletBelief: row " + std::to_string(row) + " has no allowed successor");
    }
  }
}

DirichletBelief DirichletBelief::on_support_of(const TabularMdp& structure, double prior) {
  if (!(prior > 0.0)) throw ValidationError("DirichletBelief: prior concentration must be positive");
  const auto& p = structure.transitions();
  std::vector<double> alpha(p.size(), 0.0);
  std::vector<std::uint8_t> mask(p.size(), 0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] > 0.0) {
      alpha[k] = prior;
      mask[k] = 1;
    }
  }
  return DirichletBelief(structure.n_states(), structure.n_actions(), std::move(alpha),
                         std::move(mask));
}

std::vector<double> DirichletBelief::mean_row(StateId s, ActionId a) const {
  const auto row = alpha_row(s, a);
  double total = 0.0;
  for (double v : row) total += v;
  std::vector<double> out(row.begin(), row.end());
  for (double& v : out) v /= total;
  return out;
}

void DirichletBelief::observe(const Transition& obs) {
  if (obs.state >= n_states_ || obs.action >= n_actions_ || obs.next_state >= n_states_) {
    throw ValidationError("DirichletBelief: observation index out of range");
  }
  const std::size_t k = index(obs.state, obs.action, obs.next_state);
  if (!mask_[k]) {
    throw ImpossibleObservation("DirichletBelief: transition " + std::to_string(obs.state) + " -(" +
                                std::to_string(obs.action) + ")-> " +
                                std::to_string(obs.next_state) + " is outside the support");
  }
  alpha_[k] += 1.0;
}

DirichletBelief dirichlet_update(const DirichletBelief& belief, const Transition& obs) {
  DirichletBelief out = belief;
  out.observe(obs);
  return out;
}

TabularMdp dirichlet_sample(const DirichletBelief& belief, std::span<const double> reward, Rng& rng) {
  const std::size_t n = belief.n_states();
  const std::size_t m = belief.n_actions();
  std::vector<double> transition(n * m * n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < m; ++a) {
      const auto alpha = belief.alpha_row(static_cast<StateId>(s), static_cast<ActionId>(a));
      double* row = transition.data() + (s * m + a) * n;
      std::size_t support = 0;
      std::size_t only = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (alpha[j] > 0.0) {
          ++support;
          only = j;
        }
      }
      if (support == 1) {
        row[only] = 1.0;
        continue;
      }
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (alpha[j] > 0.0) {
          row[j] = rng.gamma(alpha[j]);
          total += row[j];
        }
      }
      for (std::size_t j = 0; j < n; ++j) row[j] /= total;
    }
  }
  return TabularMdp(n, m, std::move(transition), std::vector<double>(reward.begin(), reward.end()));
}

void to_json(nlohmann::json& j, const DirichletBelief& belief) {
  j = nlohmann::json{{"kind", "dirichlet"},
                     {"n_states", belief.n_states()},
                     {"n_actions", belief.n_actions()},
                     {"alpha", belief.alphas()}};
}

}  // namespace dspsrl
