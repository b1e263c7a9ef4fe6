#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace dspsrl {

/// Infinite-horizon average-cost LQ controller: u = -gain * x.
struct LqSolution {
  /// Cost-to-go matrix, fixed point of the discrete algebraic Riccati equation.
  Eigen::MatrixXd p;
  /// Feedback matrix (R + B'PB)^{-1} B'PA.
  Eigen::MatrixXd gain;
  /// trace(P * noise_cov).
  double avg_cost = 0.0;
  std::size_t iterations = 0;
};

struct DareOptions {
  /// Stop when ||P_{k+1} - P_k||_F falls below tol * max(1, ||P_k||_F).
  double tol = 1e-10;
  std::size_t max_iter = 1'000'000;
};

/// Fixed-point iteration of the Riccati map from P_0 = Q. Throws PlannerError
/// when the iterate diverges, does not converge in max_iter steps, or yields a
/// closed loop with spectral radius >= 1.
LqSolution solve_dare(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                      const Eigen::MatrixXd& q, const Eigen::MatrixXd& r,
                      const Eigen::MatrixXd& noise_cov, const DareOptions& options = {});

/// Q + A'PA - A'PB (R + B'PB)^{-1} B'PA.
Eigen::MatrixXd riccati_map(const Eigen::MatrixXd& p, const Eigen::MatrixXd& a,
                            const Eigen::MatrixXd& b, const Eigen::MatrixXd& q,
                            const Eigen::MatrixXd& r);

double spectral_radius(const Eigen::MatrixXd& m);

}  // namespace dspsrl
