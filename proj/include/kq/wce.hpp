#pragma once

#include <Eigen/Core>

#include "kq/domain.hpp"
#include "kq/gauss_kernel.hpp"

namespace kq {

/// Result of a symmetric positive-definite solve with the shared jitter policy.
struct SpdSolve {
  Eigen::VectorXd x;
  double jitter_used = 0.0;
};

/// Solves (K + jitter I) x = rhs by Cholesky, escalating the jitter through
/// {0, 1e-12, 1e-10, 1e-8} when the factorization fails. Throws
/// ConditioningError (reporting the smallest pivot) if all levels fail.
SpdSolve solve_spd_with_jitter(const Eigen::MatrixXd& K, const Eigen::VectorXd& rhs);

/// Squared worst-case error of a rule with arbitrary weights over the unit
/// cube: k0 - 2 sum_j w_j J_d(x_j) + sum_{ij} w_i w_j K(x_i,x_j).
/// Requires shape a = 1 (closed-form embeddings). Values in [-1e-10, 0) are
/// clamped to 0; anything more negative throws ConditioningError.
double squared_wce(const QuadratureRule& rule, const GaussianKernel& kernel);

/// Weights minimizing the squared worst-case error for fixed nodes:
/// solve K w = z with z_i = J_d(x_i).
QuadratureRule optimal_weights(const NodeSet& nodes, const GaussianKernel& kernel);

/// k0 - z^T w* via the factorization route (the production path).
/// Clamp threshold -1e-8.
double squared_wce_optimal(const NodeSet& nodes, const GaussianKernel& kernel);

/// Same quantity through the bordered determinant det[[k0, z^T],[z, K]] / det K.
/// Test oracle only: determinants are evaluated with an independent
/// partial-pivot LU in long double, not through the Cholesky solve path.
double squared_wce_optimal_det(const NodeSet& nodes, const GaussianKernel& kernel);

}  // namespace kq
