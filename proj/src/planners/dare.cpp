#include "dspsrl/planners/dare.hpp"

#include <cmath>
#include <string>

#include "dspsrl/core/errors.hpp"

namespace dspsrl {

namespace {

constexpr double kDivergenceNorm = 1e15;

}  // namespace

Eigen::MatrixXd riccati_map(const Eigen::MatrixXd& p, const Eigen::MatrixXd& a,
                            const Eigen::MatrixXd& b, const Eigen::MatrixXd& q,
                            const Eigen::MatrixXd& r) {
  const Eigen::MatrixXd pa = p * a;
  const Eigen::MatrixXd bt_pa = b.transpose() * pa;
  const Eigen::MatrixXd inner = r + b.transpose() * p * b;
  return q + a.transpose() * pa - bt_pa.transpose() * inner.ldlt().solve(bt_pa);
}

double spectral_radius(const Eigen::MatrixXd& m) {
  return Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues().cwiseAbs().maxCoeff();
}

LqSolution solve_dare(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                      const Eigen::MatrixXd& q, const Eigen::MatrixXd& r,
                      const Eigen::MatrixXd& noise_cov, const DareOptions& options) {
  if (a.rows() != a.cols() || b.rows() != a.rows() || q.rows() != a.rows() ||
      q.cols() != a.rows() || r.rows() != b.cols() || r.cols() != b.cols() ||
      noise_cov.rows() != a.rows() || noise_cov.cols() != a.rows()) {
    throw ValidationError("solve_dare: inconsistent matrix dimensions");
  }
  Eigen::MatrixXd p = q;
  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    Eigen::MatrixXd next = riccati_map(p, a, b, q, r);
    next = 0.5 * (next + next.transpose());
    const double scale = std::max(1.0, p.norm());
    const double change = (next - p).norm();
    if (!next.allFinite() || next.norm() > kDivergenceNorm) {
      throw PlannerError("solve_dare: Riccati iteration diverged after " + std::to_string(iter) +
                         " iterations (pair not stabilizable?)");
    }
    p = std::move(next);
    if (change <= options.tol * scale) {
      LqSolution out;
      const Eigen::MatrixXd inner = r + b.transpose() * p * b;
      out.gain = inner.ldlt().solve(b.transpose() * p * a);
      const double rho = spectral_radius(a - b * out.gain);
      if (!(rho < 1.0)) {
        throw PlannerError("solve_dare: closed loop not stable, spectral radius " +
                           std::to_string(rho));
      }
      out.avg_cost = (p * noise_cov).trace();
      out.p = std::move(p);
      out.iterations = iter;
      return out;
    }
  }
  throw PlannerError("solve_dare: no convergence after " + std::to_string(options.max_iter) +
                     " iterations");
}

}  // namespace dspsrl
