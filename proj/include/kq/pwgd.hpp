#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kq/domain.hpp"
#include "kq/energy.hpp"
#include "kq/gauss_kernel.hpp"

namespace kq {

/// Per-point step selection. ClampedMin applies min(gamma, shrink * feasible
/// step), keeping every iterate strictly inside the feasible box. LiteralMax
/// keeps the printed rule gamma <- max{gamma, feasible step} and then steps by
/// gamma; it lets gamma grow monotonically and will normally walk a point out
/// of the feasible region, aborting the run -- kept selectable for comparison.
enum class StepRule { ClampedMin, LiteralMax };

struct PwgdConfig {
  double gamma = 1.0;
  int k_max = 1000;
  double eps = 1e-5;
  StepRule step_rule = StepRule::ClampedMin;
  double shrink = 0.9;
  std::uint64_t seed = 0;
};

enum class Termination { Converged, MaxSweeps };

struct SweepRecord {
  double max_grad_norm;
  double objective;
  double min_dist;
};

struct PwgdTrace {
  std::vector<SweepRecord> sweeps;
  Termination reason = Termination::MaxSweeps;
};

/// Gauss--Seidel descent over single points: each sweep updates x_1..x_N in
/// order, every gradient evaluated against the current positions of all other
/// points. Stops when the sweep's max gradient norm drops below cfg.eps or
/// after k_max sweeps. Deterministic given (spec, n, cfg.seed).
std::pair<NodeSet, PwgdTrace> run_pwgd(const ObjectiveSpec& spec, int n, const PwgdConfig& cfg,
                                       const DomainBox& domain);

/// Same loop from a caller-supplied start (must be strictly feasible).
std::pair<NodeSet, PwgdTrace> run_pwgd_from(const ObjectiveSpec& spec, NodeSet initial,
                                            const PwgdConfig& cfg);

/// Final step of the pipeline: optimal weights for a generated node set.
QuadratureRule make_quadrature(const NodeSet& nodes, const GaussianKernel& kernel);

}  // namespace kq
