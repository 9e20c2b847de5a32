#include "kq/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kq/errors.hpp"
#include "kq/fekete.hpp"
#include "kq/sbq.hpp"
#include "kq/svg.hpp"
#include "kq/theory.hpp"
#include "kq/wce.hpp"

namespace kq {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int worker_count(size_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 2;
  if (const char* env = std::getenv("KQ_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return static_cast<int>(std::min<size_t>(hw, jobs));
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

double effective_gamma(const RunParams& p) {
  if (p.gamma > 0.0) return p.gamma;
  return p.method == "pwgd-gauss" ? 0.1 : 1.0;
}

double effective_eps(const RunParams& p) {
  if (p.eps > 0.0) return p.eps;
  return p.dim == 3 ? 1e-4 : 1e-5;
}

RunResult run_single(const RunParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const GaussianKernel kernel{1.0};

  RunResult out;
  out.report.method = params.method;
  out.report.dim = params.dim;
  out.report.n = params.n;
  out.report.seed = params.seed;

  if (params.method == "pwgd-fs" || params.method == "pwgd-gauss") {
    ObjectiveSpec spec;
    spec.kind = params.method == "pwgd-fs" ? ObjectiveKind::FundamentalSolution
                                           : ObjectiveKind::GaussianWCE;
    spec.P = params.P;
    spec.M = params.M;
    spec.dim = params.dim;
    spec.barrier = params.barrier;

    PwgdConfig cfg;
    cfg.gamma = effective_gamma(params);
    cfg.k_max = params.kmax;
    cfg.eps = effective_eps(params);
    cfg.step_rule = params.step_rule;
    cfg.seed = params.seed;

    auto [nodes, trace] = run_pwgd(spec, params.n, cfg, DomainBox(params.dim));
    out.rule = make_quadrature(nodes, kernel);
    out.report.P = params.P;
    out.report.M = params.M;
    out.report.gamma = cfg.gamma;
    out.report.eps = cfg.eps;
    out.report.sweeps = static_cast<int>(trace.sweeps.size());
  } else if (params.method == "sbq") {
    const int count = default_sbq_candidate_count(params.n, params.dim);
    const CandidateSet cands =
        make_candidates(DomainBox(params.dim), CandidateKind::TensorGrid, count, params.seed);
    out.rule = run_sbq(params.n, cands, kernel);
    out.report.sweeps = params.n;  // greedy steps
  } else {
    throw std::invalid_argument("run_single: unknown method '" + params.method + "'");
  }

  const int n = out.rule.nodes.size();
  QuadratureRule equal{out.rule.nodes, Eigen::VectorXd::Constant(n, 1.0 / n)};
  out.report.wce_equal_sq = squared_wce(equal, kernel);
  out.report.wce_optimal_sq = squared_wce_optimal(out.rule.nodes, kernel);
  out.report.min_pairwise_dist = n >= 2 ? min_pairwise_distance(out.rule.nodes) : 0.0;
  if (out.report.wce_optimal_sq > out.report.wce_equal_sq + 1e-10) {
    std::ostringstream os;
    os << "run_single: optimal-weight error " << out.report.wce_optimal_sq
       << " exceeds equal-weight error " << out.report.wce_equal_sq;
    throw ConditioningError(os.str());
  }
  out.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

void cmd_generate(const RunParams& params, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const RunResult res = run_single(params);
  const std::filesystem::path dir(out_dir);
  write_points_csv((dir / "points.csv").string(), res.rule.nodes);
  write_weights_csv((dir / "weights.csv").string(), res.rule.weights);
  write_file_atomic((dir / "report.json").string(), report_to_json(res.report));
  std::ostringstream title;
  title << params.method << "  d=" << params.dim << "  N=" << params.n;
  write_scatter_svg((dir / "points.svg").string(), res.rule.nodes, title.str());
}

RunParams parse_method_token(const std::string& token, const RunParams& defaults) {
  RunParams p = defaults;
  const auto paren = token.find('(');
  const std::string name = token.substr(0, paren);
  if (name != "pwgd-fs" && name != "pwgd-gauss" && name != "sbq")
    throw std::invalid_argument("unknown method token '" + token + "'");
  p.method = name;
  p.gamma = defaults.gamma;  // < 0 resolves to the method default later
  if (paren != std::string::npos) {
    if (token.back() != ')')
      throw std::invalid_argument("malformed method token '" + token + "'");
    const std::string args = token.substr(paren + 1, token.size() - paren - 2);
    const auto comma = args.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("method token needs (P,M): '" + token + "'");
    p.P = std::stod(args.substr(0, comma));
    p.M = std::stod(args.substr(comma + 1));
  }
  return p;
}

void cmd_sweep(const SweepParams& params, const std::string& out_dir) {
  if (params.n_list.empty() || params.methods.empty() || params.seeds.empty())
    throw std::invalid_argument("cmd_sweep: n-list, methods and seeds must be non-empty");
  std::filesystem::create_directories(out_dir);

  struct Job {
    RunParams run;
    std::string token;
  };
  std::vector<Job> jobs;
  for (const auto& token : params.methods) {
    const RunParams base = parse_method_token(token, params.defaults);
    for (int n : params.n_list) {
      for (std::uint64_t seed : params.seeds) {
        Job j{base, token};
        j.run.n = n;
        j.run.seed = seed;
        jobs.push_back(std::move(j));
      }
    }
  }

  std::vector<RunReport> reports(jobs.size());
  std::atomic<size_t> next{0};
  const int workers = worker_count(jobs.size());
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
          RunReport r = run_single(jobs[i].run).report;
          r.method = jobs[i].token;  // keep the (P,M) tag in the row label
          reports[i] = std::move(r);
        }
      } catch (...) {
        errors[static_cast<size_t>(w)] = std::current_exception();
        next.store(jobs.size());
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::ostringstream csv;
  csv << report_csv_header() << "\n";
  for (const auto& r : reports) csv << report_csv_row(r) << "\n";
  write_file_atomic((std::filesystem::path(out_dir) / "sweep.csv").string(), csv.str());

  std::vector<SweepSeries> series;
  for (const auto& token : params.methods) {
    SweepSeries s;
    s.label = token;
    for (int n : params.n_list) {
      std::vector<double> vals;
      for (size_t i = 0; i < jobs.size(); ++i) {
        if (jobs[i].token == token && jobs[i].run.n == n)
          vals.push_back(reports[i].wce_optimal_sq);
      }
      s.n_values.push_back(n);
      s.medians.push_back(median(std::move(vals)));
    }
    series.push_back(std::move(s));
  }
  std::ostringstream title;
  title << "median squared optimal-weight error, d=" << params.defaults.dim;
  write_sweep_svg((std::filesystem::path(out_dir) / "sweep.svg").string(), series, title.str());
}

// ---------------------------------------------------------------------------
// Verification suites

namespace {

void add_row(std::vector<VerifyRow>& rows, const std::string& name, double residual,
             double threshold) {
  rows.push_back({name, residual, threshold, residual <= threshold});
}

double thr(double def, double tol) { return std::max(def, tol); }

void lemmas_suite(std::vector<VerifyRow>& rows, double tol) {
  // h >= 0 and the heat-integral lower bound, on an (alpha, t) grid.
  for (int d : {2, 3}) {
    const double D = std::sqrt(static_cast<double>(d));
    double h_violation = 0.0;
    double bound_violation = 0.0;
    const double t_lo = D * D / d;
    for (int ti = 0; ti < 5; ++ti) {
      const double t = t_lo * std::pow(10.0, 0.5 * ti);  // t_lo .. 100 t_lo
      h_violation = std::max(h_violation, -h_function(d, D, t));
      for (int ai = 1; ai <= 20; ++ai) {
        const double alpha = D * ai / 20.0;
        const double lhs = int_heat_kernel(d, t, alpha);
        const double rhs = std::pow(4.0 * M_PI, -0.5 * d) *
                           (std::pow(static_cast<double>(d), 0.5 * d - 1.0) /
                                (2.0 * std::pow(D, d - 2)) *
                                std::exp(-d * alpha * alpha / (4.0 * D * D)) +
                            h_function(d, D, t));
        bound_violation = std::max(bound_violation, rhs - lhs);
      }
    }
    add_row(rows, "h-nonnegative-d" + std::to_string(d), h_violation, thr(1e-12, tol));
    add_row(rows, "heat-integral-lower-bound-d" + std::to_string(d), bound_violation,
            thr(1e-12, tol));
  }

  // Center independence of the Green-heat self integral.
  for (double t : {0.5, 2.0}) {
    const double threshold = thr(1e-6, tol);
    QuadratureTolerances qt = QuadratureTolerances::for_time(t, threshold * 1e-2, 1e-9);
    const double centered = c_constant(2, t, qt);
    const double shifted = c_constant_offcenter(2, t, Eigen::Vector2d(0.3, 0.4), qt);
    std::ostringstream name;
    name << "center-independence-t" << t;
    add_row(rows, name.str(), std::abs(centered - shifted), threshold);
  }

  // Disjoint-points identity: 2-D quadrature vs closed forms.
  for (double t : {1.0, 4.0}) {
    for (double r : {0.3, 1.0}) {
      const double threshold = thr(1e-3, tol);
      QuadratureTolerances qt = QuadratureTolerances::for_time(t, threshold * 1e-4, 1e-8);
      const Eigen::Vector2d a(0.1, 0.2), b(0.1 + r, 0.2);
      const double lhs = green_heat_integral(a, b, t, qt);
      const double rhs = fundamental_solution_r(2, r) + int_heat_kernel(2, t, r);
      std::ostringstream name;
      name << "green-heat-identity-r" << r << "-t" << t;
      add_row(rows, name.str(), std::abs(lhs - rhs) / std::abs(rhs), threshold);
    }
  }
}

NodeSet theorem_instance_nodes() {
  NodeSet nodes(2, 2);
  nodes.pts << 0.25, 0.5, 0.75, 0.5;  // gap 0.5 inside the unit square
  return nodes;
}

void theorem_suite(std::vector<VerifyRow>& rows, bool do_t1, bool do_t2, double tol) {
  const double t = 2.0;
  const double D = std::sqrt(2.0);
  const NodeSet nodes = theorem_instance_nodes();
  const double threshold = thr(1e-2, tol);
  QuadratureTolerances qt = QuadratureTolerances::for_time(t, threshold * 1e-4, 1e-7);

  const double a_val = a_energy_bruteforce(2, t, nodes, qt);
  const double c_val = c_constant(2, t, qt);
  const int n = nodes.size();
  double heat_sum = 0.0, g_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double r = (nodes.pts.row(i) - nodes.pts.row(j)).norm();
      heat_sum += int_heat_kernel(2, t, r);
      g_sum += fundamental_solution_r(2, r);
    }
  }
  heat_sum /= n * n;
  g_sum /= n * n;

  if (do_t1) {
    const double rhs = a_val - c_val / n - g_sum;
    const double residual = std::abs(heat_sum - rhs) / std::max(std::abs(heat_sum), std::abs(rhs));
    add_row(rows, "energy-decomposition-residual", residual, threshold);
  }
  if (do_t2) {
    for (double a_shape : {1.0, 2.0}) {
      double gauss = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j)
            gauss += std::exp(-a_shape * a_shape *
                              (nodes.pts.row(i) - nodes.pts.row(j)).squaredNorm());
      gauss /= n * n;
      const UpperBoundConstants ub = ub_constants(2, D, t);
      const double rhs = ub.c_hat * (-g_sum + a_val - c_val / n -
                                     (1.0 / (4.0 * M_PI)) * (n - 1.0) / n * ub.h_value);
      const double excess = (gauss - rhs) / std::max(std::abs(gauss), std::abs(rhs));
      std::ostringstream name;
      name << "pair-energy-upper-bound-a" << a_shape;
      add_row(rows, name.str(), std::max(0.0, excess), threshold);
    }
  }
}

void fekete_suite(std::vector<VerifyRow>& rows, double tol) {
  // Determinant identity at truncation rank = point count, where it is exact.
  const std::vector<std::vector<double>> sets_a = {
      {-0.7, 0.1}, {-0.8, -0.1, 0.6}, {-0.9, -0.3, 0.2, 0.5, 0.8}};
  const std::vector<std::vector<double>> sets_b = {
      {-0.2, 0.9}, {-0.5, 0.3, 0.7}, {-0.6, -0.2, 0.1, 0.4, 0.9}};
  for (size_t k = 0; k < sets_a.size(); ++k) {
    const int n = static_cast<int>(sets_a[k].size());
    const double res = check_det_identity(1.0, sets_a[k], sets_b[k], n);
    add_row(rows, "det-identity-rank-n" + std::to_string(n), res, thr(1e-8, tol));
  }
  for (double eps : {0.5, 1.0, 2.0}) {
    const auto xs = minimize_log_energy(eps, 2);
    const double res = std::max(std::abs(xs[0] + 0.5 / eps), std::abs(xs[1] - 0.5 / eps));
    std::ostringstream name;
    name << "two-point-minimizer-eps" << eps;
    add_row(rows, name.str(), res, thr(1e-6, tol));
  }
  // Self-certifying stationarity at n = 5.
  {
    const auto xs = minimize_log_energy(1.0, 5);
    double g2 = 0.0;
    for (int k = 0; k < 5; ++k) {
      double g = 2.0 * xs[k];
      for (int j = 0; j < 5; ++j)
        if (j != k) g -= 1.0 / (xs[k] - xs[j]);
      g2 += g * g;
    }
    add_row(rows, "five-point-stationarity", std::sqrt(g2), thr(1e-10, tol));
  }
}

}  // namespace

std::vector<VerifyRow> verify_suite(const std::string& suite, double tol) {
  std::vector<VerifyRow> rows;
  if (suite == "lemmas") {
    lemmas_suite(rows, tol);
  } else if (suite == "theorem1") {
    theorem_suite(rows, true, false, tol);
  } else if (suite == "theorem2") {
    theorem_suite(rows, false, true, tol);
  } else if (suite == "fekete") {
    fekete_suite(rows, tol);
  } else if (suite == "all") {
    lemmas_suite(rows, tol);
    theorem_suite(rows, true, true, tol);
    fekete_suite(rows, tol);
  } else {
    throw std::invalid_argument("verify_suite: unknown suite '" + suite + "'");
  }
  return rows;
}

}  // namespace kq
