#pragma once

#include <cstddef>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "dspsrl/core/rng.hpp"

namespace dspsrl {

/// Matrix-normal posterior over the stacked dynamics Θ = [A'; B'] ((n+d) x n),
/// for x_{t+1}' = z_t' Θ + w' with regressor z = [x; u] and known noise
/// covariance W.
///
/// vec(Θ) ~ N(vec(mean), W ⊗ precision^{-1}): the row precision `precision`
/// is shared by every output coordinate and the noise covariance couples the
/// columns. Conditioning on one transition adds z z' to the row precision,
/// which is exactly z z' ⊗ W^{-1} on the full parameter precision.
class GaussianLinearBelief {
 public:
  GaussianLinearBelief(Eigen::MatrixXd mean, Eigen::MatrixXd precision, Eigen::MatrixXd noise_cov);

  /// Zero mean and independent entries with precision `entry_precision`
  /// (exact when the noise covariance is isotropic; otherwise scaled by
  /// trace(W)/n).
  static GaussianLinearBelief isotropic_prior(std::size_t n, std::size_t d, double entry_precision,
                                              const Eigen::MatrixXd& noise_cov);

  std::size_t n() const { return static_cast<std::size_t>(mean_.cols()); }
  std::size_t d() const { return static_cast<std::size_t>(mean_.rows() - mean_.cols()); }
  const Eigen::MatrixXd& mean() const { return mean_; }
  const Eigen::MatrixXd& precision() const { return precision_; }
  const Eigen::MatrixXd& noise_cov() const { return noise_cov_; }
  /// C with C C' = noise_cov.
  const Eigen::MatrixXd& noise_factor() const { return noise_factor_; }
  /// Cholesky factorization of the row precision.
  const Eigen::LLT<Eigen::MatrixXd>& precision_factor() const { return factor_; }

  Eigen::MatrixXd mean_a() const { return mean_.topRows(mean_.cols()).transpose(); }
  Eigen::MatrixXd mean_b() const { return mean_.bottomRows(mean_.rows() - mean_.cols()).transpose(); }

  /// log det(precision); the covariance determinant halves when this grows
  /// by log 2.
  double log_det_precision() const;

  void observe(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& next_x);

 private:
  Eigen::MatrixXd mean_;
  Eigen::MatrixXd precision_;
  Eigen::MatrixXd noise_cov_;
  Eigen::MatrixXd noise_factor_;
  // Cholesky factor of precision_, kept current by rank-one updates so that
  // very large regressors (a diverging state) cannot break positive
  // definiteness through rounding.
  Eigen::LLT<Eigen::MatrixXd> factor_;
};

struct LinearDynamics {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
};

GaussianLinearBelief gaussian_update(const GaussianLinearBelief& belief, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& u, const Eigen::VectorXd& next_x);

LinearDynamics gaussian_sample(const GaussianLinearBelief& belief, Rng& rng);

void to_json(nlohmann::json& j, const GaussianLinearBelief& belief);

}  // namespace dspsrl
