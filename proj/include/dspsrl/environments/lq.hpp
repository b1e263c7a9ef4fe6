#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "dspsrl/core/rng.hpp"

namespace dspsrl {

/// x_{t+1} = A x_t + B u_t + w_{t+1},  w ~ N(0, noise_cov),  c_t = x'Qx + u'Ru.
class LqSystem {
 public:
  /// Validates dimensions, symmetry and definiteness of Q and R (smallest
  /// eigenvalue > 0), positive semi-definiteness of noise_cov, and
  /// stabilizability of (A, B) by running the Riccati solver.
  LqSystem(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd q, Eigen::MatrixXd r,
           Eigen::MatrixXd noise_cov);

  std::size_t n() const { return static_cast<std::size_t>(a_.rows()); }
  std::size_t d() const { return static_cast<std::size_t>(b_.cols()); }
  const Eigen::MatrixXd& a() const { return a_; }
  const Eigen::MatrixXd& b() const { return b_; }
  const Eigen::MatrixXd& q() const { return q_; }
  const Eigen::MatrixXd& r() const { return r_; }
  const Eigen::MatrixXd& noise_cov() const { return noise_cov_; }
  /// F with F F' = noise_cov.
  const Eigen::MatrixXd& noise_factor() const { return noise_factor_; }

 private:
  Eigen::MatrixXd a_, b_, q_, r_, noise_cov_, noise_factor_;
};

struct LqStepResult {
  Eigen::VectorXd next_state;
  double cost;
};

/// Throws ValidationError on dimension mismatch.
LqStepResult lq_step(const LqSystem& sys, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                     Rng& rng);

/// Square-root factor of a symmetric positive semi-definite matrix.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& m);

struct LqDefaults {
  std::size_t n = 2;
  std::size_t d = 2;
  std::uint64_t system_seed = 7;
  /// A* is rescaled to this spectral radius after being drawn.
  double a_spectral_radius = 1.05;
  double noise_scale = 0.01;
};

/// A*, B* drawn once from a seeded standard normal (A* rescaled to the
/// configured spectral radius), Q = R = I, noise_cov = noise_scale * I.
LqSystem default_lq_system(const LqDefaults& defaults = {});

}  // namespace dspsrl
