#pragma once

#include <Eigen/Core>
#include <string>

#include "kq/rng.hpp"

namespace kq {

/// The integration region [0,1]^d.
struct DomainBox {
  int dim = 2;

  explicit DomainBox(int d);

  double lower() const { return 0.0; }
  double upper() const { return 1.0; }
  /// Euclidean diagonal, sqrt(d).
  double diameter() const;
  bool contains(const Eigen::VectorXd& x) const;
};

/// An ordered list of N distinct points in [0,1]^d, one point per row.
struct NodeSet {
  Eigen::MatrixXd pts;  // N x d

  NodeSet() = default;
  NodeSet(int n, int d) : pts(Eigen::MatrixXd::Zero(n, d)) {}
  explicit NodeSet(Eigen::MatrixXd p) : pts(std::move(p)) {}

  int size() const { return static_cast<int>(pts.rows()); }
  int dim() const { return static_cast<int>(pts.cols()); }
  Eigen::RowVectorXd point(int i) const { return pts.row(i); }
};

/// Nodes plus a weight vector of matching length; the end deliverable.
struct QuadratureRule {
  NodeSet nodes;
  Eigen::VectorXd weights;
};

/// n i.i.d.-uniform points in the box. Offending points closer than 1e-12 to
/// an earlier point are resampled, so the result is always pairwise distinct.
NodeSet sample_uniform(const DomainBox& domain, int n, SeededRng& rng);

/// min over i<j of ||x_i - x_j||. Requires N >= 2.
double min_pairwise_distance(const NodeSet& nodes);

/// CSV with header x1,...,xd and 17-significant-digit floats, one point per row.
void write_points_csv(const std::string& path, const NodeSet& nodes);
NodeSet read_points_csv(const std::string& path);

void write_weights_csv(const std::string& path, const Eigen::VectorXd& weights);

}  // namespace kq
