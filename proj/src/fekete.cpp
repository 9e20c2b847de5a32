#include "kq/fekete.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

#include "kq/errors.hpp"
#include "kq/gauss_kernel.hpp"

namespace kq {

namespace {

void require_increasing(const std::vector<double>& xs, const char* where) {
  for (size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1]))
      throw std::invalid_argument(std::string(where) + ": points must be strictly increasing");
  }
}

Eigen::VectorXd energy_grad(double eps, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd g(n);
  for (int k = 0; k < n; ++k) {
    double v = 2.0 * eps * eps * x[k];
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      v -= 1.0 / (x[k] - x[j]);
    }
    g[k] = v;
  }
  return g;
}

Eigen::MatrixXd energy_hess(double eps, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double diag = 2.0 * eps * eps;
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      const double inv2 = 1.0 / ((x[k] - x[j]) * (x[k] - x[j]));
      diag += inv2;
      h(k, j) = -inv2;
    }
    h(k, k) = diag;
  }
  return h;
}

bool strictly_increasing(const Eigen::VectorXd& x) {
  for (int i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) return false;
  return true;
}

}  // namespace

double log_energy(double eps, const std::vector<double>& xs) {
  if (!(eps > 0.0)) throw std::invalid_argument("log_energy: eps must be > 0");
  require_increasing(xs, "log_energy");
  double e = 0.0;
  for (double x : xs) e += eps * eps * x * x;
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j) e -= std::log(xs[j] - xs[i]);
  return e;
}

std::vector<double> minimize_log_energy(double eps, int n) {
  if (!(eps > 0.0)) throw std::invalid_argument("minimize_log_energy: eps must be > 0");
  if (n < 1) throw std::invalid_argument("minimize_log_energy: n must be >= 1");
  if (n == 1) return {0.0};

  // Symmetric equispaced start at the 1/eps scale of the stationarity balance.
  Eigen::VectorXd x(n);
  const double half_span = std::sqrt(static_cast<double>(n)) / (2.0 * eps);
  for (int k = 0; k < n; ++k)
    x[k] = -half_span + 2.0 * half_span * k / (n - 1);

  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::VectorXd g = energy_grad(eps, x);
    if (g.norm() < 1e-11) break;
    const Eigen::MatrixXd h = energy_hess(eps, x);
    Eigen::VectorXd step = h.llt().solve(g);
    // Halve until the ordered cone is preserved (the minimizer lies inside it).
    double scale = 1.0;
    Eigen::VectorXd trial = x - step;
    while (!strictly_increasing(trial) && scale > 1e-12) {
      scale *= 0.5;
      trial = x - scale * step;
    }
    x = trial;
  }
  if (energy_grad(eps, x).norm() >= 1e-10)
    throw NumericalError("minimize_log_energy: Newton did not reach gradient norm 1e-10");
  return {x.data(), x.data() + n};
}

double check_det_identity(double eps, const std::vector<double>& xs_a,
                          const std::vector<double>& xs_b, int n_terms) {
  if (xs_a.size() != xs_b.size())
    throw std::invalid_argument("check_det_identity: sets must have equal size");
  require_increasing(xs_a, "check_det_identity");
  require_increasing(xs_b, "check_det_identity");

  auto neg_half_logdet = [eps, n_terms](const std::vector<double>& xs) {
    NodeSet nodes(static_cast<int>(xs.size()), 1);
    for (size_t i = 0; i < xs.size(); ++i) nodes.pts(static_cast<int>(i), 0) = xs[i];
    const KernelMatrix kh = truncated_kernel_matrix(eps, n_terms, nodes);
    Eigen::LLT<Eigen::MatrixXd> llt(kh.m);
    if (llt.info() != Eigen::Success)
      throw ConditioningError(
          "check_det_identity: truncated Gram matrix is numerically singular; "
          "increase n_terms");
    // log det = 2 sum log L_ii, so -1/2 log det = -sum log L_ii.
    double s = 0.0;
    const auto& L = llt.matrixLLT();
    for (int i = 0; i < L.rows(); ++i) s -= std::log(L(i, i));
    return s;
  };

  const double df = neg_half_logdet(xs_a) - neg_half_logdet(xs_b);
  const double de = log_energy(eps, xs_a) - log_energy(eps, xs_b);
  return std::abs(df - de);
}

}  // namespace kq
