#include "kq/gauss_kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "kq/errors.hpp"

namespace kq {

namespace {
const double kSqrtPi = std::sqrt(M_PI);
}

double kernel_eval(const GaussianKernel& k, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) throw std::invalid_argument("kernel_eval: dimension mismatch");
  return std::exp(-k.a * k.a * (x - y).squaredNorm());
}

KernelMatrix kernel_matrix(const GaussianKernel& k, const NodeSet& nodes, double jitter) {
  if (jitter < 0.0) throw std::invalid_argument("kernel_matrix: jitter must be >= 0");
  const int n = nodes.size();
  KernelMatrix out;
  out.jitter = jitter;
  out.m.resize(n, n);
  const double a2 = k.a * k.a;
  for (int i = 0; i < n; ++i) {
    out.m(i, i) = 1.0 + jitter;
    for (int j = i + 1; j < n; ++j) {
      const double v = std::exp(-a2 * (nodes.pts.row(i) - nodes.pts.row(j)).squaredNorm());
      out.m(i, j) = v;
      out.m(j, i) = v;
    }
  }
  return out;
}

double j1(double x) { return 0.5 * kSqrtPi * (std::erf(1.0 - x) + std::erf(x)); }

double j1_deriv(double x) { return std::exp(-x * x) - std::exp(-(1.0 - x) * (1.0 - x)); }

double j_d(const Eigen::RowVectorXd& x) {
  double p = 1.0;
  for (int l = 0; l < x.size(); ++l) p *= j1(x[l]);
  return p;
}

double k0(int d, double a) {
  if (d < 1) throw std::invalid_argument("k0: d must be >= 1");
  if (!(a > 0.0)) throw std::invalid_argument("k0: a must be > 0");
  const double one_dim =
      kSqrtPi * std::erf(a) / a + (std::exp(-a * a) - 1.0) / (a * a);
  return std::pow(one_dim, d);
}

KernelMatrix truncated_kernel_matrix(double eps, int n_terms, const NodeSet& nodes) {
  if (n_terms < 1) throw std::invalid_argument("truncated_kernel_matrix: n_terms must be >= 1");
  if (nodes.dim() != 1)
    throw std::invalid_argument("truncated_kernel_matrix: nodes must be one-dimensional");
  const int n = nodes.size();
  Eigen::MatrixXd phi(n, n_terms);
  const double log_2eps2 = std::log(2.0 * eps * eps);
  for (int i = 0; i < n; ++i) {
    const double x = nodes.pts(i, 0);
    const double envelope = -eps * eps * x * x;
    const double ax = std::abs(x);
    for (int l = 0; l < n_terms; ++l) {
      // phi_l(x) = exp(-eps^2 x^2) sqrt((2 eps^2)^l / l!) x^l, log-domain.
      const double log_coeff = 0.5 * (l * log_2eps2 - std::lgamma(l + 1.0));
      if (l == 0) {
        phi(i, l) = std::exp(envelope + log_coeff);
      } else if (ax == 0.0) {
        phi(i, l) = 0.0;
      } else {
        const double mag = std::exp(envelope + log_coeff + l * std::log(ax));
        phi(i, l) = (x < 0.0 && (l % 2 == 1)) ? -mag : mag;
      }
    }
  }
  KernelMatrix out;
  out.jitter = 0.0;
  out.m = phi * phi.transpose();
  return out;
}

}  // namespace kq
