#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dspsrl/core/rng.hpp"
#include "dspsrl/core/tabular_mdp.hpp"
#include "dspsrl/planners/relative_value_iteration.hpp"
#include "dspsrl/posteriors/dirichlet_belief.hpp"
#include "dspsrl/posteriors/finite_belief.hpp"

namespace dspsrl {

/// A sampled model reduced to what an agent needs: its parameter (NaN when
/// there is no scalar parameter) and its optimal policy.
struct PolicyDraw {
  double param;
  std::shared_ptr<const AvgRewardSolution> solution;
};

/// Posterior that can be sampled into a solved model and conditioned on
/// transitions.
class TabularPosterior {
 public:
  virtual ~TabularPosterior() = default;

  virtual PolicyDraw draw(Rng& rng) = 0;
  virtual void observe(const Transition& obs) = 0;
  virtual void snapshot(nlohmann::json& out) const = 0;
  /// Planner calls made by this posterior so far.
  virtual std::size_t solves() const = 0;
};

/// Optimal solutions of every member of a finite family, computed on first use.
/// Thread-safe; one instance may be shared by all runs over the same family.
class FamilySolutions {
 public:
  explicit FamilySolutions(ScalarParamFamily family, RviOptions options = {});

  const ScalarParamFamily& family() const { return family_; }
  std::shared_ptr<const AvgRewardSolution> solution(std::size_t index) const;
  std::size_t solves() const { return solves_.load(); }

 private:
  ScalarParamFamily family_;
  RviOptions options_;
  std::unique_ptr<std::once_flag[]> once_;
  mutable std::vector<std::shared_ptr<const AvgRewardSolution>> cache_;
  mutable std::atomic<std::size_t> solves_{0};
};

class FinitePosterior final : public TabularPosterior {
 public:
  FinitePosterior(std::shared_ptr<const FamilySolutions> solutions, FiniteBelief belief);

  PolicyDraw draw(Rng& rng) override;
  void observe(const Transition& obs) override;
  void snapshot(nlohmann::json& out) const override;
  std::size_t solves() const override { return solutions_->solves(); }

  const FiniteBelief& belief() const { return belief_; }

 private:
  std::shared_ptr<const FamilySolutions> solutions_;
  FiniteBelief belief_;
};

class DirichletPosterior final : public TabularPosterior {
 public:
  DirichletPosterior(DirichletBelief belief, std::vector<double> reward, RviOptions options = {});

  PolicyDraw draw(Rng& rng) override;
  void observe(const Transition& obs) override;
  void snapshot(nlohmann::json& out) const override;
  std::size_t solves() const override { return solves_; }

  const DirichletBelief& belief() const { return belief_; }

 private:
  DirichletBelief belief_;
  std::vector<double> reward_;
  RviOptions options_;
  std::size_t solves_ = 0;
};

}  // namespace dspsrl
