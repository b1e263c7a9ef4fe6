#include "dspsrl/posteriors/tabular_posterior.hpp"

#include <nlohmann/json.hpp>

#include "dspsrl/core/episode_log.hpp"
#include "dspsrl/core/errors.hpp"

namespace dspsrl {

FamilySolutions::FamilySolutions(ScalarParamFamily family, RviOptions options)
    : family_(std::move(family)),
      options_(options),
      once_(std::make_unique<std::once_flag[]>(family_.size())),
      cache_(family_.size()) {}

std::shared_ptr<const AvgRewardSolution> FamilySolutions::solution(std::size_t index) const {
  std::call_once(once_[index], [&] {
    cache_[index] =
        std::make_shared<const AvgRewardSolution>(relative_value_iteration(family_.model(index), options_));
    solves_.fetch_add(1);
  });
  return cache_[index];
}

FinitePosterior::FinitePosterior(std::shared_ptr<const FamilySolutions> solutions, FiniteBelief belief)
    : solutions_(std::move(solutions)), belief_(std::move(belief)) {
  if (belief_.size() != solutions_->family().size()) {
    throw ValidationError("FinitePosterior: belief and family have different supports");
  }
}

PolicyDraw FinitePosterior::draw(Rng& rng) {
  const std::size_t i = belief_.sample_index(rng);
  return {belief_.support()[i], solutions_->solution(i)};
}

void FinitePosterior::observe(const Transition& obs) {
  belief_ = finite_update(belief_, solutions_->family(), obs);
}

void FinitePosterior::snapshot(nlohmann::json& out) const { to_json(out, belief_); }

DirichletPosterior::DirichletPosterior(DirichletBelief belief, std::vector<double> reward,
                                       RviOptions options)
    : belief_(std::move(belief)), reward_(std::move(reward)), options_(options) {
  if (reward_.size() != belief_.n_states() * belief_.n_actions()) {
    throw ValidationError("DirichletPosterior: reward table has the wrong size");
  }
}

PolicyDraw DirichletPosterior::draw(Rng& rng) {
  const TabularMdp sampled = dirichlet_sample(belief_, reward_, rng);
  ++solves_;
  return {kNoParam, std::make_shared<const AvgRewardSolution>(relative_value_iteration(sampled, options_))};
}

void DirichletPosterior::observe(const Transition& obs) { belief_.observe(obs); }

void DirichletPosterior::snapshot(nlohmann::json& out) const { to_json(out, belief_); }

}  // namespace dspsrl
