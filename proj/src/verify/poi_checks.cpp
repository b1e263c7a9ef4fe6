#include "dspsrl/verify/poi_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dspsrl/core/errors.hpp"

namespace dspsrl {

double poi_l1_distance(const PoiModel& model, std::size_t s, std::size_t a, double theta,
                       double theta_prime) {
  const auto p = poi_transition_probs(model, s, a, theta);
  const auto q = poi_transition_probs(model, s, a, theta_prime);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += std::abs(p[i] - q[i]);
  return total;
}

LipschitzReport check_lipschitz(const PoiModel& model, std::span<const double> theta_grid) {
  for (double theta : theta_grid) {
    if (!(theta >= 1.0)) throw DomainError("check_lipschitz: grid value below 1");
  }
  LipschitzReport report;
  const std::size_t n = model.n_pois();
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        for (std::size_t j = i + 1; j < theta_grid.size(); ++j) {
          const double t1 = theta_grid[i];
          const double t2 = theta_grid[j];
          if (t1 == t2) continue;
          const double dist = poi_l1_distance(model, s, a, t1, t2);
          const double gap = std::abs(t1 - t2);
          ++report.comparisons;
          const double ratio = dist / gap;
          if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.argmax_s = s;
            report.argmax_a = a;
            report.argmax_theta = std::min(t1, t2);
            report.argmax_theta_prime = std::max(t1, t2);
            report.argmax_p = model.passive(s, a);
          }
          if (dist > kPoiLipschitz * gap + 1e-12 && report.ok) {
            report.ok = false;
            std::ostringstream msg;
            msg.precision(17);
            msg << "s=" << s << " a=" << a << " theta=" << t1 << " theta'=" << t2
                << " distance=" << dist << " bound=" << kPoiLipschitz * gap;
            report.counterexample = msg.str();
          }
        }
      }
    }
  }
  return report;
}

PinskerResult check_pinsker(double p, double theta_star, double theta) {
  const double q_star = std::pow(p, 1.0 / theta_star);
  const double q = std::pow(p, 1.0 / theta);
  PinskerResult out;
  if (q_star != q) {
    out.kl = q_star * std::log(q_star / q) + (1.0 - q_star) * std::log((1.0 - q_star) / (1.0 - q));
  }
  out.bound = 2.0 * (q_star - q) * (q_star - q);
  out.ok = out.kl >= out.bound - 1e-12;
  return out;
}

ConcentrationConstants concentration_constants(std::span<const double> support, double theta_star,
                                               double delta_p, double resolution) {
  if (support.size() < 2) throw ValidationError("concentration_constants: need at least two parameters");
  if (!(delta_p > 0.0 && delta_p < 0.5)) {
    throw ValidationError("concentration_constants: delta_p must lie in (0, 0.5)");
  }
  if (std::find(support.begin(), support.end(), theta_star) == support.end()) {
    throw ValidationError("concentration_constants: theta* is not in the support");
  }
  if (!(resolution > 0.0)) throw ValidationError("concentration_constants: resolution must be positive");
  const auto [lo, hi] = std::minmax_element(support.begin(), support.end());

  ConcentrationConstants out;
  out.delta_p = delta_p;
  out.kappa = (*hi - *lo) * (*hi - *lo);
  out.c0 = std::min(std::log(1.0 / delta_p) * delta_p,
                    std::log(1.0 / (1.0 - delta_p)) * (1.0 - delta_p)) /
           (*hi * *hi);
  out.delta_theta = std::numeric_limits<double>::infinity();
  for (double theta : support) {
    if (theta != theta_star) out.delta_theta = std::min(out.delta_theta, std::abs(theta - theta_star));
  }

  double worst = 0.0;
  auto visit = [&](double p) {
    const double qs = std::pow(p, 1.0 / theta_star);
    for (double theta : support) {
      const double q = std::pow(p, 1.0 / theta);
      worst = std::max(worst, std::abs(std::log(q / qs)));
      worst = std::max(worst, std::abs(std::log((1.0 - q) / (1.0 - qs))));
    }
  };
  const double a = delta_p;
  const double b = 1.0 - delta_p;
  const auto steps = static_cast<std::size_t>(std::ceil((b - a) / resolution));
  for (std::size_t k = 0; k < steps; ++k) visit(a + static_cast<double>(k) * resolution);
  visit(b);
  out.b = 2.0 * worst;
  return out;
}

}  // namespace dspsrl
