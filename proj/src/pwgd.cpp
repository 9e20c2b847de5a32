#include "kq/pwgd.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kq/errors.hpp"
#include "kq/wce.hpp"

namespace kq {

namespace {

// Largest beta >= 0 with x - beta*g still inside the open box (lo,hi)^d;
// +inf when the ray never leaves (only possible for g = 0, handled upstream).
double feasible_step(const Eigen::RowVectorXd& x, const Eigen::VectorXd& g, double lo, double hi) {
  double beta = std::numeric_limits<double>::infinity();
  for (int l = 0; l < x.size(); ++l) {
    const double v = -g[l];
    if (v > 0.0) {
      beta = std::min(beta, (hi - x[l]) / v);
    } else if (v < 0.0) {
      beta = std::min(beta, (x[l] - lo) / (-v));
    }
  }
  return beta;
}

}  // namespace

std::pair<NodeSet, PwgdTrace> run_pwgd(const ObjectiveSpec& spec, int n, const PwgdConfig& cfg,
                                       const DomainBox& domain) {
  validate(spec);
  if (n < 2) throw std::invalid_argument("run_pwgd: n must be >= 2");
  if (domain.dim != spec.dim) throw std::invalid_argument("run_pwgd: domain dim != spec.dim");

  double lo, hi;
  feasible_interval(spec, &lo, &hi);

  // Initial set: uniform in the cube, mapped onto the feasible box and kept
  // strictly interior (a coordinate exactly on a bound is redrawn).
  SeededRng rng(cfg.seed);
  NodeSet nodes = sample_uniform(domain, n, rng);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < spec.dim; ++l) {
      double c = lo + nodes.pts(i, l) * (hi - lo);
      while (c <= lo || c >= hi) c = lo + rng.next_double() * (hi - lo);
      nodes.pts(i, l) = c;
    }
  }
  return run_pwgd_from(spec, std::move(nodes), cfg);
}

std::pair<NodeSet, PwgdTrace> run_pwgd_from(const ObjectiveSpec& spec, NodeSet nodes,
                                            const PwgdConfig& cfg) {
  validate(spec);
  const int n = nodes.size();
  if (n < 2) throw std::invalid_argument("run_pwgd: n must be >= 2");
  if (nodes.dim() != spec.dim) throw std::invalid_argument("run_pwgd: node dim != spec.dim");
  if (!(cfg.gamma > 0.0)) throw std::invalid_argument("run_pwgd: gamma must be > 0");
  if (cfg.k_max < 1) throw std::invalid_argument("run_pwgd: k_max must be >= 1");
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("run_pwgd: eps must be > 0");
  if (!(cfg.shrink > 0.0 && cfg.shrink < 1.0))
    throw std::invalid_argument("run_pwgd: shrink must be in (0,1)");

  double lo, hi;
  feasible_interval(spec, &lo, &hi);

  PwgdTrace trace;
  double gamma = cfg.gamma;  // mutated only under LiteralMax
  for (int sweep = 1; sweep <= cfg.k_max; ++sweep) {
    double max_grad = 0.0;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd g;
      try {
        g = energy_gradient(spec, nodes, i);
      } catch (const NumericalError& e) {
        std::ostringstream os;
        os << "run_pwgd: objective evaluation failed at sweep " << sweep << ", point " << i
           << ": " << e.what();
        throw NumericalError(os.str());
      }
      const double norm = g.norm();
      max_grad = std::max(max_grad, norm);
      if (norm == 0.0) continue;  // any step rule is vacuous

      const double feasible = feasible_step(nodes.pts.row(i), g, lo, hi);
      double step;
      if (cfg.step_rule == StepRule::ClampedMin) {
        step = std::min(gamma, cfg.shrink * feasible);
      } else {
        // Literal rule; once a point has left the box the feasible step is
        // empty, which we read as 0 so gamma simply persists.
        gamma = std::max(gamma, std::max(0.0, feasible));
        step = gamma;
      }
      nodes.pts.row(i) -= step * g.transpose();
    }

    SweepRecord rec;
    rec.max_grad_norm = max_grad;
    try {
      rec.objective = objective_value(spec, nodes);
    } catch (const NumericalError& e) {
      std::ostringstream os;
      os << "run_pwgd: objective evaluation failed after sweep " << sweep << ": " << e.what();
      throw NumericalError(os.str());
    }
    rec.min_dist = min_pairwise_distance(nodes);
    trace.sweeps.push_back(rec);

    if (max_grad < cfg.eps) {
      trace.reason = Termination::Converged;
      return {std::move(nodes), std::move(trace)};
    }
  }
  trace.reason = Termination::MaxSweeps;
  return {std::move(nodes), std::move(trace)};
}

QuadratureRule make_quadrature(const NodeSet& nodes, const GaussianKernel& kernel) {
  return optimal_weights(nodes, kernel);
}

}  // namespace kq
