#include "dspsrl/posteriors/gaussian_belief.hpp"

#include <vector>

#include <nlohmann/json.hpp>

#include "dspsrl/core/errors.hpp"
#include "dspsrl/environments/lq.hpp"

namespace dspsrl {

GaussianLinearBelief::GaussianLinearBelief(Eigen::MatrixXd mean, Eigen::MatrixXd precision,
                                           Eigen::MatrixXd noise_cov)
    : mean_(std::move(mean)), precision_(std::move(precision)), noise_cov_(std::move(noise_cov)) {
  const auto n = mean_.cols();
  const auto p = mean_.rows();
  if (n == 0 || p <= n || precision_.rows() != p || precision_.cols() != p ||
      noise_cov_.rows() != n || noise_cov_.cols() != n) {
    throw ValidationError("GaussianLinearBelief: inconsistent dimensions");
  }
  if (!precision_.isApprox(precision_.transpose(), 1e-12)) {
    throw ValidationError("GaussianLinearBelief: precision not symmetric");
  }
  factor_.compute(precision_);
  if (factor_.info() != Eigen::Success) {
    throw ValidationError("GaussianLinearBelief: precision not positive definite");
  }
  noise_factor_ = psd_factor(noise_cov_);
}

GaussianLinearBelief GaussianLinearBelief::isotropic_prior(std::size_t n, std::size_t d,
                                                           double entry_precision,
                                                           const Eigen::MatrixXd& noise_cov) {
  if (!(entry_precision > 0.0)) {
    throw ValidationError("GaussianLinearBelief: prior precision must be positive");
  }
  const auto rows = static_cast<Eigen::Index>(n + d);
  const double noise_level = noise_cov.trace() / static_cast<double>(n);
  if (!(noise_level > 0.0)) {
    throw ValidationError("GaussianLinearBelief: noise covariance must have positive trace");
  }
  return GaussianLinearBelief(Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(n)),
                              entry_precision * noise_level * Eigen::MatrixXd::Identity(rows, rows),
                              noise_cov);
}

double GaussianLinearBelief::log_det_precision() const {
  return 2.0 * factor_.matrixLLT().diagonal().array().log().sum();
}

void GaussianLinearBelief::observe(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& next_x) {
  const auto n = mean_.cols();
  const auto d = mean_.rows() - n;
  if (x.size() != n || u.size() != d || next_x.size() != n) {
    throw ValidationError("GaussianLinearBelief: observation has the wrong dimension");
  }
  Eigen::VectorXd z(n + d);
  z << x, u;
  if (z.isZero(0.0)) return;
  precision_ += z * z.transpose();
  // mean' = mean + precision'^{-1} z (x' - Θ'z)'
  const Eigen::RowVectorXd innovation = next_x.transpose() - z.transpose() * mean_;
  factor_.rankUpdate(z, 1.0);
  if (factor_.info() != Eigen::Success) {
    throw Error("GaussianLinearBelief: updated precision lost positive definiteness");
  }
  mean_ += factor_.solve(z) * innovation;
}

GaussianLinearBelief gaussian_update(const GaussianLinearBelief& belief, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& u, const Eigen::VectorXd& next_x) {
  GaussianLinearBelief out = belief;
  out.observe(x, u, next_x);
  return out;
}

LinearDynamics gaussian_sample(const GaussianLinearBelief& belief, Rng& rng) {
  const auto p = belief.mean().rows();
  const auto n = belief.mean().cols();
  Eigen::MatrixXd g(p, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < p; ++i) g(i, j) = rng.normal();
  // precision = L L'  =>  L'^{-1} g has row covariance precision^{-1}.
  const Eigen::MatrixXd rows = belief.precision_factor().matrixU().solve(g);
  const Eigen::MatrixXd theta = belief.mean() + rows * belief.noise_factor().transpose();
  return {theta.topRows(n).transpose(), theta.bottomRows(p - n).transpose()};
}

void to_json(nlohmann::json& j, const GaussianLinearBelief& belief) {
  auto flatten = [](const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index k = 0; k < m.cols(); ++k) rows[static_cast<std::size_t>(i)].push_back(m(i, k));
    return rows;
  };
  j = nlohmann::json{{"kind", "gaussian_linear"},
                     {"mean", flatten(belief.mean())},
                     {"precision", flatten(belief.precision())},
                     {"noise_cov", flatten(belief.noise_cov())}};
}

}  // namespace dspsrl
