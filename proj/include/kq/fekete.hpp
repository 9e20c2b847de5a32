#pragma once

#include <vector>

namespace kq {

/// Log-energy with quadratic external field over strictly increasing 1-D
/// points: eps^2 sum x_k^2 + sum_{i<j} log(1/|x_i - x_j|).
double log_energy(double eps, const std::vector<double>& xs);

/// Unique minimizer of log_energy over the ordered cone, by damped Newton
/// from a symmetric equispaced start. Gradient norm at the result < 1e-10;
/// output strictly increasing and symmetric about 0.
std::vector<double> minimize_log_energy(double eps, int n);

/// Difference-form residual of the determinant identity
///   -log(det K_hat)^{1/2} = C + log_energy(xs):
/// |[F(a) - F(b)] - [E(a) - E(b)]| with F = -1/2 log det of the rank-n_terms
/// truncated-kernel Gram matrix (Cholesky log-pivots), which cancels the
/// unknown constant C. The identity is exact when n_terms equals the point
/// count (square factor matrix); larger n_terms converge the matrix to the
/// full Gaussian Gram, whose determinant is translation-invariant, so there
/// the residual measures a genuine, X-dependent gap rather than truncation
/// error.
double check_det_identity(double eps, const std::vector<double>& xs_a,
                          const std::vector<double>& xs_b, int n_terms);

}  // namespace kq
