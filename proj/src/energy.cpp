#include "kq/energy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kq/errors.hpp"
#include "kq/gauss_kernel.hpp"
#include "kq/theory.hpp"
#include "kq/wce.hpp"

namespace kq {

namespace {

const double kSqrtPi = std::sqrt(M_PI);

[[noreturn]] void throw_barrier(const ObjectiveSpec& spec, const NodeSet& nodes, int i, int l) {
  std::ostringstream os;
  os << "barrier violation: point " << i << " coordinate " << l << " (value "
     << nodes.pts(i, l) << ") is at or beyond a barrier (M = " << spec.M << ", mode = "
     << (spec.barrier == BarrierMode::OutsideMargin ? "outside-margin" : "literal") << ")";
  throw BarrierError(os.str(), i, l);
}

// Distances to the two barrier planes for one coordinate; both must be > 0.
inline void barrier_gaps(const ObjectiveSpec& spec, double c, double* lo_gap, double* hi_gap) {
  *lo_gap = (spec.barrier == BarrierMode::OutsideMargin) ? c + spec.M : c - spec.M;
  *hi_gap = 1.0 + spec.M - c;
}

double pair_exponent_check(int i, int j, double r2) {
  if (r2 <= 0.0) {
    std::ostringstream os;
    os << "coincident points " << i << " and " << j;
    throw SingularityError(os.str());
  }
  return r2;
}

}  // namespace

void validate(const ObjectiveSpec& spec) {
  if (!(spec.P > 0.0)) throw std::invalid_argument("ObjectiveSpec: P must be > 0");
  if (spec.kind == ObjectiveKind::FundamentalSolution) {
    if (spec.dim != 2 && spec.dim != 3)
      throw std::invalid_argument("ObjectiveSpec: FundamentalSolution requires dim in {2,3}");
    if (spec.barrier == BarrierMode::OutsideMargin && !(spec.M > 0.0))
      throw std::invalid_argument("ObjectiveSpec: outside-margin barriers require M > 0");
    if (spec.barrier == BarrierMode::LiteralBarrier && !(spec.M < 1.0))
      throw std::invalid_argument("ObjectiveSpec: literal barriers require M < 1");
  } else {
    if (spec.dim < 1) throw std::invalid_argument("ObjectiveSpec: dim must be >= 1");
  }
}

void feasible_interval(const ObjectiveSpec& spec, double* lo, double* hi) {
  if (spec.kind == ObjectiveKind::GaussianWCE) {
    *lo = 0.0;
    *hi = 1.0;
    return;
  }
  const double barrier_lo = (spec.barrier == BarrierMode::OutsideMargin) ? -spec.M : spec.M;
  *lo = std::max(0.0, barrier_lo);
  *hi = std::min(1.0, 1.0 + spec.M);
}

double sphere_surface_area(int d) {
  return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

double fundamental_solution_r(int d, double r) {
  if (d < 2) throw std::invalid_argument("fundamental_solution: d must be >= 2");
  if (r <= 0.0) throw SingularityError("fundamental_solution: coincident points");
  if (d == 2) return std::log(r) / (2.0 * M_PI);
  return -1.0 / (2.0 * (d - 2) * sphere_surface_area(d) * std::pow(r, d - 2));
}

double fundamental_solution(int d, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fundamental_solution: dimension mismatch");
  return fundamental_solution_r(d, (x - y).norm());
}

double energy_value(const ObjectiveSpec& spec, const NodeSet& nodes) {
  validate(spec);
  const int n = nodes.size();
  const int d = nodes.dim();
  if (d != spec.dim) throw std::invalid_argument("energy_value: node dimension != spec.dim");

  if (spec.kind == ObjectiveKind::GaussianWCE) {
    QuadratureRule rule{nodes, Eigen::VectorXd::Constant(n, 1.0 / n)};
    return squared_wce(rule, GaussianKernel{1.0});
  }

  double mean_embedding = 0.0;
  for (int i = 0; i < n; ++i) mean_embedding += j_d(nodes.pts.row(i));

  double pair = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r2 =
          pair_exponent_check(i, j, (nodes.pts.row(i) - nodes.pts.row(j)).squaredNorm());
      if (d == 2) {
        pair += -std::log(r2);  // 2 * log(1/r) for the ordered-pair double count
      } else {
        pair += 2.0 / std::sqrt(r2);
      }
    }
  }
  const double nn = static_cast<double>(n);
  const double pair_coeff = (d == 2) ? 4.0 / (nn * nn) : 2.0 * kSqrtPi / (nn * nn);
  return -(2.0 / nn) * mean_embedding + pair_coeff * pair;
}

double regularizer_value(const ObjectiveSpec& spec, const NodeSet& nodes) {
  validate(spec);
  const int d = nodes.dim();
  if (d != 2 && d != 3)
    throw std::invalid_argument("regularizer_value: barriers are defined for d in {2,3}");
  if (d != spec.dim) throw std::invalid_argument("regularizer_value: node dimension != spec.dim");
  const int n = nodes.size();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < d; ++l) {
      double lo_gap, hi_gap;
      barrier_gaps(spec, nodes.pts(i, l), &lo_gap, &hi_gap);
      if (lo_gap <= 0.0 || hi_gap <= 0.0) throw_barrier(spec, nodes, i, l);
      if (d == 2) {
        sum += -std::log(lo_gap) - std::log(hi_gap);
      } else {
        sum += 1.0 / lo_gap + 1.0 / hi_gap;
      }
    }
  }
  return std::pow(static_cast<double>(n), -spec.P) * sum;
}

double objective_value(const ObjectiveSpec& spec, const NodeSet& nodes) {
  if (spec.kind == ObjectiveKind::GaussianWCE) return energy_value(spec, nodes);
  return energy_value(spec, nodes) + regularizer_value(spec, nodes);
}

Eigen::VectorXd energy_gradient(const ObjectiveSpec& spec, const NodeSet& nodes, int i) {
  validate(spec);
  const int n = nodes.size();
  const int d = nodes.dim();
  if (d != spec.dim) throw std::invalid_argument("energy_gradient: node dimension != spec.dim");
  if (i < 0 || i >= n) throw std::invalid_argument("energy_gradient: node index out of range");
  const double nn = static_cast<double>(n);

  Eigen::VectorXd g = Eigen::VectorXd::Zero(d);

  // -(2/N) grad J_d(x_i), common to both objective kinds.
  for (int l = 0; l < d; ++l) {
    double prod = j1_deriv(nodes.pts(i, l));
    for (int m = 0; m < d; ++m)
      if (m != l) prod *= j1(nodes.pts(i, m));
    g[l] = -(2.0 / nn) * prod;
  }

  if (spec.kind == ObjectiveKind::GaussianWCE) {
    // (2/N^2) sum_{j != i} grad_{x_i} K(x_i, x_j), K at shape a = 1.
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Eigen::RowVectorXd diff = nodes.pts.row(i) - nodes.pts.row(j);
      const double r2 = pair_exponent_check(i, j, diff.squaredNorm());
      g += (2.0 / (nn * nn)) * (-2.0 * std::exp(-r2)) * diff.transpose();
    }
    return g;
  }

  // Pair part; the factor 2 comes from the ordered-pair sum.
  const double pair_coeff = (d == 2) ? 8.0 / (nn * nn) : 4.0 * kSqrtPi / (nn * nn);
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const Eigen::RowVectorXd diff = nodes.pts.row(i) - nodes.pts.row(j);
    const double r2 = pair_exponent_check(i, j, diff.squaredNorm());
    if (d == 2) {
      g -= pair_coeff * diff.transpose() / r2;
    } else {
      g -= pair_coeff * diff.transpose() / (r2 * std::sqrt(r2));
    }
  }

  // Barrier derivatives.
  const double reg_scale = std::pow(nn, -spec.P);
  for (int l = 0; l < d; ++l) {
    double lo_gap, hi_gap;
    barrier_gaps(spec, nodes.pts(i, l), &lo_gap, &hi_gap);
    if (lo_gap <= 0.0 || hi_gap <= 0.0) throw_barrier(spec, nodes, i, l);
    if (d == 2) {
      g[l] += reg_scale * (-1.0 / lo_gap + 1.0 / hi_gap);
    } else {
      g[l] += reg_scale * (-1.0 / (lo_gap * lo_gap) + 1.0 / (hi_gap * hi_gap));
    }
  }
  return g;
}

UpperBoundConstants ub_constants(int d, double D, double t) {
  if (d < 2) throw std::invalid_argument("ub_constants: d must be >= 2");
  if (!(D > 0.0)) throw std::invalid_argument("ub_constants: D must be > 0");
  if (t < D * D / d) throw std::invalid_argument("ub_constants: t must be >= D^2/d");
  UpperBoundConstants out;
  out.c_hat = 2.0 * std::pow(4.0 * M_PI, 0.5 * d) * std::pow(D, d - 2) /
              std::pow(static_cast<double>(d), 0.5 * d - 1.0);
  out.h_value = h_function(d, D, t);
  return out;
}

}  // namespace kq
