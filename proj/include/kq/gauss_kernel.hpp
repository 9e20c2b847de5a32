#pragma once

#include <Eigen/Core>

#include "kq/domain.hpp"

namespace kq {

/// K(x,y) = exp(-a^2 ||x-y||^2), a > 0. The energy bounds downstream require
/// a >= sqrt(d)/(2D); callers check that where it matters.
struct GaussianKernel {
  double a = 1.0;
};

/// Symmetric kernel Gram matrix with optional diagonal jitter.
struct KernelMatrix {
  Eigen::MatrixXd m;
  double jitter = 0.0;
};

double kernel_eval(const GaussianKernel& k, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

KernelMatrix kernel_matrix(const GaussianKernel& k, const NodeSet& nodes, double jitter = 0.0);

/// J1(x) = int_0^1 exp(-(x-y)^2) dy = (sqrt(pi)/2) (erf(1-x) + erf(x)).
double j1(double x);
/// d/dx J1 = exp(-x^2) - exp(-(1-x)^2).
double j1_deriv(double x);

/// Tensor product of J1 over the coordinates: the kernel mean embedding of
/// Lebesgue measure on the unit cube at shape a = 1.
double j_d(const Eigen::RowVectorXd& x);

/// k0 = double integral of K over the cube, (sqrt(pi) erf(a)/a + (e^{-a^2}-1)/a^2)^d.
double k0(int d, double a = 1.0);

/// Gram matrix of the rank-n_terms truncation of exp(-eps^2 (x-y)^2), built
/// from the factor matrix Phi (N x n_terms) as Phi Phi^T. Coefficients are
/// assembled in log space so large n_terms cannot overflow l!.
KernelMatrix truncated_kernel_matrix(double eps, int n_terms, const NodeSet& nodes);

}  // namespace kq
