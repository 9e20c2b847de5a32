#include "kq/wce.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "kq/errors.hpp"

namespace kq {

namespace {

const double kJitterLadder[] = {0.0, 1e-12, 1e-10, 1e-8};

void require_unit_shape(const GaussianKernel& kernel, const char* where) {
  if (kernel.a != 1.0) {
    std::ostringstream os;
    os << where << ": closed-form embeddings require shape a = 1, got a = " << kernel.a;
    throw std::invalid_argument(os.str());
  }
}

Eigen::VectorXd embedding_vector(const NodeSet& nodes) {
  Eigen::VectorXd z(nodes.size());
  for (int i = 0; i < nodes.size(); ++i) z[i] = j_d(nodes.pts.row(i));
  return z;
}

}  // namespace

SpdSolve solve_spd_with_jitter(const Eigen::MatrixXd& K, const Eigen::VectorXd& rhs) {
  for (double jitter : kJitterLadder) {
    Eigen::MatrixXd A = K;
    A.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() == Eigen::Success) {
      return SpdSolve{llt.solve(rhs), jitter};
    }
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(K);
  const double smallest_pivot = ldlt.vectorD().minCoeff();
  std::ostringstream os;
  os << "solve_spd_with_jitter: factorization failed at maximum jitter 1e-8; "
     << "smallest pivot " << smallest_pivot;
  throw ConditioningError(os.str());
}

double squared_wce(const QuadratureRule& rule, const GaussianKernel& kernel) {
  require_unit_shape(kernel, "squared_wce");
  const int n = rule.nodes.size();
  if (n < 1) throw std::invalid_argument("squared_wce: need at least one node");
  if (rule.weights.size() != n)
    throw std::invalid_argument("squared_wce: weight length must equal node count");
  if (!rule.weights.allFinite()) throw std::invalid_argument("squared_wce: weights must be finite");

  const Eigen::VectorXd z = embedding_vector(rule.nodes);
  const KernelMatrix K = kernel_matrix(kernel, rule.nodes, 0.0);
  const double value = k0(rule.nodes.dim()) - 2.0 * rule.weights.dot(z) +
                       rule.weights.dot(K.m * rule.weights);
  if (value < -1e-10) {
    std::ostringstream os;
    os << "squared_wce: value " << value << " below -1e-10 signals numerical breakdown"
       << " (N = " << n << ", d = " << rule.nodes.dim() << ")";
    throw ConditioningError(os.str());
  }
  return value < 0.0 ? 0.0 : value;
}

QuadratureRule optimal_weights(const NodeSet& nodes, const GaussianKernel& kernel) {
  require_unit_shape(kernel, "optimal_weights");
  if (nodes.size() < 1) throw std::invalid_argument("optimal_weights: need at least one node");
  const KernelMatrix K = kernel_matrix(kernel, nodes, 0.0);
  const SpdSolve sol = solve_spd_with_jitter(K.m, embedding_vector(nodes));
  return QuadratureRule{nodes, sol.x};
}

double squared_wce_optimal(const NodeSet& nodes, const GaussianKernel& kernel) {
  require_unit_shape(kernel, "squared_wce_optimal");
  const Eigen::VectorXd z = embedding_vector(nodes);
  const KernelMatrix K = kernel_matrix(kernel, nodes, 0.0);
  const SpdSolve sol = solve_spd_with_jitter(K.m, z);
  const double value = k0(nodes.dim()) - z.dot(sol.x);
  if (value < -1e-8) {
    std::ostringstream os;
    os << "squared_wce_optimal: value " << value << " below -1e-8 signals numerical breakdown"
       << " (N = " << nodes.size() << ", d = " << nodes.dim() << ")";
    throw ConditioningError(os.str());
  }
  return value < 0.0 ? 0.0 : value;
}

namespace {

// Partial-pivot LU determinant in long double; adequate and accurate for the
// N <= 8 sizes the determinant route is meant for.
long double lu_det(std::vector<long double> a, int n) {
  long double det = 1.0L;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    long double best = std::abs(a[static_cast<size_t>(c) * n + c]);
    for (int r = c + 1; r < n; ++r) {
      const long double v = std::abs(a[static_cast<size_t>(r) * n + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0L) return 0.0L;
    if (piv != c) {
      for (int k = 0; k < n; ++k)
        std::swap(a[static_cast<size_t>(piv) * n + k], a[static_cast<size_t>(c) * n + k]);
      det = -det;
    }
    const long double p = a[static_cast<size_t>(c) * n + c];
    det *= p;
    for (int r = c + 1; r < n; ++r) {
      const long double f = a[static_cast<size_t>(r) * n + c] / p;
      for (int k = c; k < n; ++k)
        a[static_cast<size_t>(r) * n + k] -= f * a[static_cast<size_t>(c) * n + k];
    }
  }
  return det;
}

}  // namespace

double squared_wce_optimal_det(const NodeSet& nodes, const GaussianKernel& kernel) {
  require_unit_shape(kernel, "squared_wce_optimal_det");
  const int n = nodes.size();
  const Eigen::VectorXd z = embedding_vector(nodes);
  const KernelMatrix K = kernel_matrix(kernel, nodes, 0.0);

  std::vector<long double> plain(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) plain[static_cast<size_t>(i) * n + j] = K.m(i, j);

  const int m = n + 1;
  std::vector<long double> bordered(static_cast<size_t>(m) * m);
  bordered[0] = k0(nodes.dim());
  for (int i = 0; i < n; ++i) {
    bordered[static_cast<size_t>(i + 1)] = z[i];
    bordered[static_cast<size_t>(i + 1) * m] = z[i];
    for (int j = 0; j < n; ++j)
      bordered[static_cast<size_t>(i + 1) * m + (j + 1)] = K.m(i, j);
  }

  const long double det_k = lu_det(std::move(plain), n);
  if (det_k == 0.0L)
    throw ConditioningError("squared_wce_optimal_det: kernel matrix is numerically singular");
  return static_cast<double>(lu_det(std::move(bordered), m) / det_k);
}

}  // namespace kq
