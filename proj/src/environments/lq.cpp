#include "dspsrl/environments/lq.hpp"

#include <cmath>

#include "dspsrl/core/errors.hpp"
#include "dspsrl/planners/dare.hpp"

namespace dspsrl {

namespace {

void require_spd(const Eigen::MatrixXd& m, const char* name) {
  if (m.rows() != m.cols()) throw ValidationError(std::string("LqSystem: ") + name + " not square");
  if (!m.isApprox(m.transpose(), 1e-12)) {
    throw ValidationError(std::string("LqSystem: ") + name + " not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    throw ValidationError(std::string("LqSystem: ") + name + " not positive definite");
  }
}

}  // namespace

Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal();
}

LqSystem::LqSystem(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd q, Eigen::MatrixXd r,
                   Eigen::MatrixXd noise_cov)
    : a_(std::move(a)), b_(std::move(b)), q_(std::move(q)), r_(std::move(r)),
      noise_cov_(std::move(noise_cov)) {
  const auto n = a_.rows();
  if (a_.cols() != n || b_.rows() != n || q_.rows() != n || noise_cov_.rows() != n ||
      noise_cov_.cols() != n || r_.rows() != b_.cols()) {
    throw ValidationError("LqSystem: inconsistent matrix dimensions");
  }
  require_spd(q_, "Q");
  require_spd(r_, "R");
  if (!noise_cov_.isApprox(noise_cov_.transpose(), 1e-12) && !noise_cov_.isZero()) {
    throw ValidationError("LqSystem: noise covariance not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(noise_cov_);
  if (eig.eigenvalues().minCoeff() < -1e-12) {
    throw ValidationError("LqSystem: noise covariance not positive semi-definite");
  }
  noise_factor_ = psd_factor(noise_cov_);
  try {
    (void)solve_dare(a_, b_, q_, r_, noise_cov_);
  } catch (const PlannerError& e) {
    throw ValidationError(std::string("LqSystem: (A, B) not stabilizable: ") + e.what());
  }
}

LqStepResult lq_step(const LqSystem& sys, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                     Rng& rng) {
  if (static_cast<std::size_t>(x.size()) != sys.n() || static_cast<std::size_t>(u.size()) != sys.d()) {
    throw ValidationError("lq_step: state or control has the wrong dimension");
  }
  Eigen::VectorXd w(static_cast<Eigen::Index>(sys.n()));
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = rng.normal();
  const double cost = x.dot(sys.q() * x) + u.dot(sys.r() * u);
  return {sys.a() * x + sys.b() * u + sys.noise_factor() * w, cost};
}

LqSystem default_lq_system(const LqDefaults& defaults) {
  Rng rng = substream(defaults.system_seed, 0, "lq-system");
  const auto n = static_cast<Eigen::Index>(defaults.n);
  const auto d = static_cast<Eigen::Index>(defaults.d);
  Eigen::MatrixXd a(n, n);
  Eigen::MatrixXd b(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rng.normal();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) b(i, j) = rng.normal();
  a *= defaults.a_spectral_radius / spectral_radius(a);
  return LqSystem(a, b, Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Identity(d, d),
                  defaults.noise_scale * Eigen::MatrixXd::Identity(n, n));
}

}  // namespace dspsrl
