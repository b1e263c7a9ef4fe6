#include "dspsrl/planners/relative_value_iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "dspsrl/core/errors.hpp"

namespace dspsrl {

namespace {

// Sweeps between attempts to evaluate a greedy policy that has stopped changing.
constexpr std::size_t kEvalPeriod = 64;

// Solves J + h = r_pi + P_pi h with h[0] = 0. False when the system is singular
// (the policy's chain has several recurrent classes) or the result is not finite.
bool evaluate_policy(const TabularMdp& mdp, const std::vector<ActionId>& policy,
                     std::vector<double>& h) {
  const auto n = static_cast<Eigen::Index>(mdp.n_states());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    const auto state = static_cast<StateId>(s);
    a(s, 0) += 1.0;  // column 0 holds J; h[0] is pinned to 0
    if (s > 0) a(s, s) += 1.0;
    for (const auto& succ : mdp.successors(state, policy[state])) {
      if (succ.state > 0) a(s, succ.state) -= succ.probability;
    }
    b(s) = mdp.reward(state, policy[state]);
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) return false;
  const Eigen::VectorXd x = lu.solve(b);
  if (!x.allFinite()) return false;
  h[0] = 0.0;
  for (Eigen::Index s = 1; s < n; ++s) h[static_cast<std::size_t>(s)] = x(s);
  return true;
}

}  // namespace

double span(std::span<const double> h) {
  if (h.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(h.begin(), h.end());
  return *hi - *lo;
}

AvgRewardSolution relative_value_iteration(const TabularMdp& mdp, const RviOptions& options) {
  if (!(options.tol > 0.0)) throw ValidationError("relative_value_iteration: tol must be positive");
  if (!(options.aperiodicity > 0.0 && options.aperiodicity <= 1.0)) {
    throw ValidationError("relative_value_iteration: aperiodicity weight must lie in (0, 1]");
  }
  const std::size_t n = mdp.n_states();
  const std::size_t m = mdp.n_actions();
  const double w = options.aperiodicity;
  double reward_scale = 1.0;
  for (double r : mdp.rewards()) reward_scale = std::max(reward_scale, std::abs(r));
  const double tol = options.tol * reward_scale;

  std::vector<double> h(n, 0.0);
  std::vector<double> backup(n, 0.0);
  std::vector<ActionId> policy(n, 0);
  std::vector<ActionId> checked_policy;
  std::vector<ActionId> evaluated_policy;
  double residual = std::numeric_limits<double>::infinity();

  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < n; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      ActionId best_action = 0;
      for (std::size_t a = 0; a < m; ++a) {
        double q = mdp.reward(static_cast<StateId>(s), static_cast<ActionId>(a));
        for (const auto& succ : mdp.successors(static_cast<StateId>(s), static_cast<ActionId>(a))) {
          q += succ.probability * h[succ.state];
        }
        if (q > best) {
          best = q;
          best_action = static_cast<ActionId>(a);
        }
      }
      backup[s] = best;
      policy[s] = best_action;
      const double diff = best - h[s];
      lo = std::min(lo, diff);
      hi = std::max(hi, diff);
    }
    residual = hi - lo;
    if (!std::isfinite(residual)) break;
    if (residual <= tol) {
      AvgRewardSolution out;
      out.gain = 0.5 * (hi + lo);
      const double floor = *std::min_element(h.begin(), h.end());
      for (double& v : h) v -= floor;
      out.span = span(h);
      out.bias = std::move(h);
      out.policy = std::move(policy);
      out.iterations = iter;
      return out;
    }
    if (iter % kEvalPeriod == 0) {
      // A greedy policy that survived a whole period is evaluated exactly and
      // the sweep restarts from its bias; slowly mixing chains otherwise take
      // millions of sweeps. The stopping test above is unchanged.
      const bool stable = policy == checked_policy;
      checked_policy = policy;
      if (stable && policy != evaluated_policy) {
        evaluated_policy = policy;
        if (evaluate_policy(mdp, policy, h)) continue;
      }
    }
    const double anchor = (1.0 - w) * h[0] + w * backup[0];
    for (std::size_t s = 0; s < n; ++s) h[s] = (1.0 - w) * h[s] + w * backup[s] - anchor;
  }
  throw PlannerError("relative_value_iteration: no convergence after " +
                     std::to_string(options.max_iter) + " iterations, residual span " +
                     std::to_string(residual));
}

}  // namespace dspsrl
