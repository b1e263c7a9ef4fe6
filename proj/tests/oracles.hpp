#pragma once

// Independent reference computations used as test oracles. Nothing here calls
// the planners or posteriors under test.

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "dspsrl/core/tabular_mdp.hpp"

namespace oracle {

/// Rows with every entry positive, so each stationary policy is ergodic.
inline dspsrl::TabularMdp random_mdp(boost::random::mt19937& gen, std::size_t n, std::size_t m) {
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> p(n * m * n);
  std::vector<double> r(n * m);
  for (std::size_t row = 0; row < n * m; ++row) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double u = 0.05 + unit(gen);
      p[row * n + j] = u;
      total += u;
    }
    for (std::size_t j = 0; j < n; ++j) p[row * n + j] /= total;
    r[row] = 10.0 * unit(gen) - 5.0;
  }
  return dspsrl::TabularMdp(n, m, std::move(p), std::move(r));
}

/// Stationary distribution of an ergodic chain: solve mu (P - I) = 0, sum mu = 1.
inline Eigen::VectorXd stationary(const Eigen::MatrixXd& p) {
  const auto n = p.rows();
  Eigen::MatrixXd sys(n + 1, n);
  sys.topRows(n) = (p - Eigen::MatrixXd::Identity(n, n)).transpose();
  sys.row(n).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  return sys.colPivHouseholderQr().solve(rhs);
}

/// Long-run average reward of a deterministic stationary policy.
template <class Policy>
double policy_gain(const dspsrl::TabularMdp& mdp, const Policy& policy) {
  const auto n = static_cast<Eigen::Index>(mdp.n_states());
  Eigen::MatrixXd p(n, n);
  Eigen::VectorXd r(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    const auto a = static_cast<dspsrl::ActionId>(policy[static_cast<std::size_t>(s)]);
    const auto row = mdp.row(static_cast<dspsrl::StateId>(s), a);
    for (Eigen::Index j = 0; j < n; ++j) p(s, j) = row[static_cast<std::size_t>(j)];
    r(s) = mdp.reward(static_cast<dspsrl::StateId>(s), a);
  }
  return stationary(p).dot(r);
}

/// Best gain over every deterministic stationary policy.
inline double best_gain(const dspsrl::TabularMdp& mdp) {
  const std::size_t n = mdp.n_states();
  const std::size_t m = mdp.n_actions();
  std::size_t total = 1;
  for (std::size_t s = 0; s < n; ++s) total *= m;
  double best = -INFINITY;
  std::vector<std::size_t> policy(n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t s = 0; s < n; ++s) {
      policy[s] = c % m;
      c /= m;
    }
    best = std::max(best, policy_gain(mdp, policy));
  }
  return best;
}

/// Pearson goodness-of-fit p-value of observed counts against probabilities.
inline double gof_p_value(const std::vector<std::size_t>& counts, const std::vector<double>& probs) {
  double n = 0.0;
  for (auto c : counts) n += static_cast<double>(c);
  double stat = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double e = n * probs[k];
    stat += (static_cast<double>(counts[k]) - e) * (static_cast<double>(counts[k]) - e) / e;
  }
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace oracle
