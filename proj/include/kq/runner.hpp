#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kq/domain.hpp"
#include "kq/energy.hpp"
#include "kq/pwgd.hpp"
#include "kq/report.hpp"

namespace kq {

/// One experiment: method id plus every knob the CLI exposes. Negative gamma
/// or eps means "use the method/dimension default" (gamma 1 for pwgd-fs,
/// 0.1 for pwgd-gauss; eps 1e-5 for d = 2, 1e-4 for d = 3).
struct RunParams {
  std::string method = "pwgd-fs";  // pwgd-fs | pwgd-gauss | sbq
  int dim = 2;
  int n = 50;
  double P = 0.5;
  double M = 0.5;
  double gamma = -1.0;
  double eps = -1.0;
  int kmax = 1000;
  std::uint64_t seed = 1;
  BarrierMode barrier = BarrierMode::OutsideMargin;
  StepRule step_rule = StepRule::ClampedMin;
};

struct RunResult {
  RunReport report;
  QuadratureRule rule;
};

double effective_gamma(const RunParams& p);
double effective_eps(const RunParams& p);

RunResult run_single(const RunParams& params);

/// Writes points.csv, weights.csv, report.json, points.svg into out_dir.
void cmd_generate(const RunParams& params, const std::string& out_dir);

/// Method tokens: "pwgd-fs", "pwgd-fs(0.6,0.35)", "pwgd-gauss", "sbq".
RunParams parse_method_token(const std::string& token, const RunParams& defaults);

struct SweepParams {
  std::vector<int> n_list;
  std::vector<std::string> methods;
  std::vector<std::uint64_t> seeds;
  RunParams defaults;
};

/// Runs every (method, N, seed) row in a worker pool (KQ_THREADS caps the
/// width), then writes sweep.csv and sweep.svg atomically (tmp + rename).
void cmd_sweep(const SweepParams& params, const std::string& out_dir);

struct VerifyRow {
  std::string name;
  double residual;
  double threshold;
  bool pass;
};

/// Suites: lemmas | theorem1 | theorem2 | fekete | all. tol > 0 loosens every
/// threshold to at least tol and coarsens the quadratures accordingly.
std::vector<VerifyRow> verify_suite(const std::string& suite, double tol = 0.0);

}  // namespace kq
