#include "kq/sbq.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "kq/errors.hpp"
#include "kq/wce.hpp"

namespace kq {

namespace {

long long ipow(int base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int grid_side(int count, int d) {
  int side = std::max(1, static_cast<int>(std::ceil(std::pow(count, 1.0 / d) - 1e-9)));
  while (ipow(side, d) < count) ++side;
  return side;
}

double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

}  // namespace

int default_sbq_candidate_count(int n, int d) {
  return static_cast<int>(ipow(grid_side(4 * n, d), d));
}

CandidateSet make_candidates(const DomainBox& domain, CandidateKind kind, int count,
                             std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("make_candidates: count must be >= 1");
  const int d = domain.dim;
  CandidateSet out;
  out.kind = kind;
  switch (kind) {
    case CandidateKind::TensorGrid: {
      if (count < ipow(2, d))
        throw std::invalid_argument("make_candidates: TensorGrid needs count >= 2^d");
      const int side = grid_side(count, d);
      const int total = static_cast<int>(ipow(side, d));
      out.points = NodeSet(total, d);
      for (int idx = 0; idx < total; ++idx) {
        int rest = idx;
        for (int l = 0; l < d; ++l) {
          out.points.pts(idx, l) = (rest % side + 0.5) / side;
          rest /= side;
        }
      }
      break;
    }
    case CandidateKind::Halton: {
      static const int bases[3] = {2, 3, 5};
      if (d > 3) throw std::invalid_argument("make_candidates: Halton bases cover d <= 3");
      out.points = NodeSet(count, d);
      for (int i = 0; i < count; ++i)
        for (int l = 0; l < d; ++l) out.points.pts(i, l) = halton(i + 1, bases[l]);
      break;
    }
    case CandidateKind::Uniform: {
      SeededRng rng(seed);
      out.points = sample_uniform(domain, count, rng);
      break;
    }
  }
  return out;
}

QuadratureRule run_sbq(int n, const CandidateSet& candidates, const GaussianKernel& kernel) {
  if (kernel.a != 1.0) throw std::invalid_argument("run_sbq: requires shape a = 1");
  const int m = candidates.points.size();
  const int d = candidates.points.dim();
  if (n < 1) throw std::invalid_argument("run_sbq: n must be >= 1");
  if (m < n) throw std::invalid_argument("run_sbq: candidate count must be >= n");

  Eigen::VectorXd z_cand(m);
  for (int c = 0; c < m; ++c) z_cand[c] = j_d(candidates.points.pts.row(c));
  const double k0_val = k0(d);

  static const double kJitterLadder[] = {0.0, 1e-12, 1e-10, 1e-8};
  int jitter_level = 0;

  std::vector<int> chosen;
  chosen.reserve(n);
  std::vector<char> used(m, 0);
  Eigen::MatrixXd L(n, n);       // lower Cholesky of K_sel + jitter I
  Eigen::VectorXd yhat(n);       // L^{-1} z_sel
  double yhat_sq = 0.0;

  // Refactorize the selected prefix from scratch at the current jitter.
  auto rebuild = [&]() -> bool {
    const int k = static_cast<int>(chosen.size());
    const double lam = kJitterLadder[jitter_level];
    Eigen::MatrixXd K(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j <= i; ++j) {
        const double v = kernel_eval(kernel, candidates.points.pts.row(chosen[i]).transpose(),
                                     candidates.points.pts.row(chosen[j]).transpose());
        K(i, j) = v + (i == j ? lam : 0.0);
      }
    }
    for (int col = 0; col < k; ++col) {
      double diag = K(col, col);
      for (int r = 0; r < col; ++r) diag -= L(col, r) * L(col, r);
      if (diag <= 0.0) return false;
      L(col, col) = std::sqrt(diag);
      for (int row = col + 1; row < k; ++row) {
        double v = K(row, col);
        for (int r = 0; r < col; ++r) v -= L(row, r) * L(col, r);
        L(row, col) = v / L(col, col);
      }
    }
    yhat_sq = 0.0;
    for (int i = 0; i < k; ++i) {
      double v = z_cand[chosen[i]];
      for (int r = 0; r < i; ++r) v -= L(i, r) * yhat[r];
      yhat[i] = v / L(i, i);
      yhat_sq += yhat[i] * yhat[i];
    }
    return true;
  };

  Eigen::VectorXd kc, u;
  for (int step = 0; step < n; ++step) {
    const int k = static_cast<int>(chosen.size());
    const double lam = kJitterLadder[jitter_level];

    int best = -1;
    double best_wce = std::numeric_limits<double>::infinity();
    double best_pivot = 0.0, best_beta = 0.0;
    Eigen::VectorXd best_u(k);

    kc.resize(k);
    u.resize(k);
    for (int c = 0; c < m; ++c) {
      if (used[c]) continue;
      for (int i = 0; i < k; ++i)
        kc[i] = kernel_eval(kernel, candidates.points.pts.row(c).transpose(),
                            candidates.points.pts.row(chosen[i]).transpose());
      double u_sq = 0.0;
      for (int i = 0; i < k; ++i) {
        double v = kc[i];
        for (int r = 0; r < i; ++r) v -= L(i, r) * u[r];
        u[i] = v / L(i, i);
        u_sq += u[i] * u[i];
      }
      const double pivot_sq = 1.0 + lam - u_sq;
      if (pivot_sq <= 1e-14) continue;  // numerically dependent candidate
      const double pivot = std::sqrt(pivot_sq);
      const double beta = (z_cand[c] - u.dot(yhat.head(k))) / pivot;
      const double wce = k0_val - yhat_sq - beta * beta;
      if (wce < best_wce) {
        best_wce = wce;
        best = c;
        best_pivot = pivot;
        best_beta = beta;
        best_u = u;
      }
    }

    if (best < 0) {
      // Every remaining candidate lost positive definiteness; escalate jitter.
      bool recovered = false;
      while (jitter_level + 1 < 4) {
        ++jitter_level;
        if (rebuild()) {
          recovered = true;
          break;
        }
      }
      if (recovered) {
        --step;
        continue;
      }
      std::ostringstream os;
      os << "run_sbq: factorization failed at step " << (step + 1) << " (selected " << k
         << " of " << n << ", jitter " << kJitterLadder[jitter_level] << ")";
      throw ConditioningError(os.str());
    }

    L.row(k).head(k) = best_u.transpose();
    L(k, k) = best_pivot;
    yhat[k] = best_beta;
    yhat_sq += best_beta * best_beta;
    used[best] = 1;
    chosen.push_back(best);
  }

  NodeSet nodes(n, d);
  for (int i = 0; i < n; ++i) nodes.pts.row(i) = candidates.points.pts.row(chosen[i]);
  return optimal_weights(nodes, kernel);
}

}  // namespace kq
