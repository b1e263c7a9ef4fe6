#include "dspsrl/verify/delta.hpp"

#include <algorithm>
#include <cmath>

#include "dspsrl/core/errors.hpp"
#include "dspsrl/verify/concentration.hpp"

namespace dspsrl {

namespace {

double l1_row_distance(std::span<const double> p, std::span<const double> q) {
  double d = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) d += std::abs(p[k] - q[k]);
  return d;
}

}  // namespace

double family_lipschitz_constant(const ScalarParamFamily& family) {
  double c = 0.0;
  const auto support = family.support();
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      const auto& mi = family.model(i);
      const auto& mj = family.model(j);
      const double gap = std::abs(support[i] - support[j]);
      for (StateId s = 0; s < mi.n_states(); ++s) {
        for (ActionId a = 0; a < mi.n_actions(); ++a) {
          c = std::max(c, l1_row_distance(mi.row(s, a), mj.row(s, a)) / gap);
        }
      }
    }
  }
  return c;
}

double family_max_span(const FamilySolutions& solutions) {
  double h = 0.0;
  for (std::size_t i = 0; i < solutions.family().size(); ++i) {
    h = std::max(h, solutions.solution(i)->span);
  }
  return h;
}

DeltaSeries delta_t_diagnostic(const EpisodeLog& log, const FamilySolutions& solutions) {
  if (std::isnan(log.true_param)) throw ValidationError("delta_t_diagnostic: log without theta*");
  const auto& family = solutions.family();
  const TabularMdp& truth = family.build(log.true_param);
  const double c = family_lipschitz_constant(family);
  const double h_max = family_max_span(solutions);

  DeltaSeries out;
  out.delta.reserve(log.transitions.size());
  out.holder_bound.reserve(log.transitions.size());
  out.lipschitz_bound.reserve(log.transitions.size());
  std::size_t next = 0;
  std::size_t current = 0;
  double theta = kNoParam;
  for (const auto& tr : log.transitions) {
    while (next < log.switch_times.size() && log.switch_times[next] <= tr.t) {
      theta = log.sampled_params[next];
      current = family.index_of(theta);
      ++next;
    }
    if (std::isnan(theta)) throw ValidationError("delta_t_diagnostic: step before the first switch");
    const auto& sampled = family.model(current);
    const auto& h = solutions.solution(current)->bias;
    const auto p_true = truth.row(tr.state, tr.action);
    const auto p_sampled = sampled.row(tr.state, tr.action);
    double delta = 0.0;
    double h_abs = 0.0;
    for (std::size_t x = 0; x < h.size(); ++x) {
      delta += (p_true[x] - p_sampled[x]) * h[x];
      h_abs = std::max(h_abs, std::abs(h[x]));
    }
    out.delta.push_back(delta);
    out.holder_bound.push_back(l1_row_distance(p_true, p_sampled) * h_abs);
    out.lipschitz_bound.push_back(c * h_max * std::abs(log.true_param - theta));
    out.sum += delta;
    out.max_span = std::max(out.max_span, solutions.solution(current)->span);
  }
  return out;
}

DeltaChain delta_chain_check(std::span<const EpisodeLog> logs, const FamilySolutions& solutions) {
  if (logs.empty()) throw ValidationError("delta_chain_check: no logs");
  const std::size_t horizon = logs.front().transitions.size();
  if (horizon < 2) throw ValidationError("delta_chain_check: horizon must be at least 2");
  DeltaChain out;
  out.c = family_lipschitz_constant(solutions.family());
  for (const auto& log : logs) {
    if (log.transitions.size() != horizon) {
      throw ValidationError("delta_chain_check: logs differ in horizon");
    }
    const DeltaSeries series = delta_t_diagnostic(log, solutions);
    out.mean_sum += series.sum;
    out.h = std::max(out.h, series.max_span);
    for (std::size_t k = 0; k < series.delta.size(); ++k) {
      if (std::abs(series.delta[k]) > series.holder_bound[k] + 1e-12 ||
          series.holder_bound[k] > series.lipschitz_bound[k] + 1e-12) {
        out.per_step_ok = false;
      }
    }
  }
  out.mean_sum /= static_cast<double>(logs.size());
  const double t = static_cast<double>(horizon);
  const double log_t = std::log(t);
  out.c_prime = track_concentration(logs).max_statistic / log_t;
  out.bound = out.c * out.h * std::sqrt(2.0 * out.c_prime * t * log_t * log_t);
  out.ok = out.per_step_ok && out.mean_sum <= out.bound;
  return out;
}

}  // namespace dspsrl
