#pragma once

#include <cstdint>

#include "kq/domain.hpp"
#include "kq/gauss_kernel.hpp"

namespace kq {

enum class CandidateKind { TensorGrid, Halton, Uniform };

struct CandidateSet {
  NodeSet points;
  CandidateKind kind = CandidateKind::TensorGrid;
};

/// TensorGrid: equispaced interior grid, half a cell off every face, with
/// ceil(count^{1/d}) points per axis. Halton: bases 2,3,5 starting at index 1.
/// Uniform: seeded uniform sampling.
CandidateSet make_candidates(const DomainBox& domain, CandidateKind kind, int count,
                             std::uint64_t seed = 0);

/// Candidate count for the default 4x-oversampled tensor grid at target n.
int default_sbq_candidate_count(int n, int d);

/// Greedy selection: each step appends the unused candidate minimizing the
/// optimal-weight squared worst-case error of the grown set (ties broken by
/// lowest candidate index). Incremental Cholesky makes a step cost O(N^2) per
/// candidate. The returned rule carries optimal weights for the full set.
QuadratureRule run_sbq(int n, const CandidateSet& candidates, const GaussianKernel& kernel);

}  // namespace kq
