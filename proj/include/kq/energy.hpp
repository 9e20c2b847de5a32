#pragma once

#include <Eigen/Core>

#include "kq/domain.hpp"

namespace kq {

enum class ObjectiveKind { FundamentalSolution, GaussianWCE };

/// Barrier placement. The default keeps the singular planes outside the cube
/// at -M and 1+M; LiteralBarrier puts the lower singularity at +M (inside the
/// cube for the usual M), shrinking the feasible region to (M,1)^d.
enum class BarrierMode { OutsideMargin, LiteralBarrier };

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::FundamentalSolution;
  double P = 0.5;  // regularizer strength exponent, N^{-P}
  double M = 0.5;  // boundary margin
  int dim = 2;     // {2,3} for FundamentalSolution, >= 1 for GaussianWCE
  BarrierMode barrier = BarrierMode::OutsideMargin;
};

void validate(const ObjectiveSpec& spec);

/// Per-coordinate interval (lo, hi) on which the total objective is defined:
/// the open cube intersected with the barrier interior.
void feasible_interval(const ObjectiveSpec& spec, double* lo, double* hi);

/// Fundamental solution of the Laplacian on R^d:
/// (1/2pi) log||x-y|| for d = 2, -1/(2(d-2) s_d ||x-y||^{d-2}) for d >= 3.
double fundamental_solution(int d, const Eigen::VectorXd& x, const Eigen::VectorXd& y);
double fundamental_solution_r(int d, double r);

/// Surface area of the unit sphere S^{d-1}.
double sphere_surface_area(int d);

/// The energy without the barrier term:
///   I_2 = -(2/N) sum J_2 + (4/N^2) sum_{i != j} log(1/r_ij)
///   I_3 = -(2/N) sum J_3 + (2 sqrt(pi)/N^2) sum_{i != j} 1/r_ij
/// GaussianWCE: the squared worst-case error at equal weights 1/N.
double energy_value(const ObjectiveSpec& spec, const NodeSet& nodes);

/// Barrier sum N^{-P} sum_i delta_M(x_i); log barriers for d = 2, reciprocal
/// for d = 3. Defined only for d in {2,3}.
double regularizer_value(const ObjectiveSpec& spec, const NodeSet& nodes);

/// energy + regularizer for FundamentalSolution; plain energy for GaussianWCE
/// (that objective carries no barrier term).
double objective_value(const ObjectiveSpec& spec, const NodeSet& nodes);

/// Analytic gradient of objective_value with respect to node i.
Eigen::VectorXd energy_gradient(const ObjectiveSpec& spec, const NodeSet& nodes, int i);

/// Deterministic constants of the worst-case-error upper bound:
/// C_hat = 2 (4 pi)^{d/2} D^{d-2} / d^{d/2-1}, plus h_{d,D}(t). The remaining
/// pieces of the bound (A_d, C_d) come from the theory module on demand.
struct UpperBoundConstants {
  double c_hat;
  double h_value;
};
UpperBoundConstants ub_constants(int d, double D, double t);

}  // namespace kq
