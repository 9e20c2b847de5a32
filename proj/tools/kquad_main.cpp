#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "kq/errors.hpp"
#include "kq/runner.hpp"

namespace {

// Split on commas that are not inside parentheses, so method tokens like
// pwgd-fs(0.5,0.5) survive.
std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

kq::BarrierMode parse_barrier(const std::string& s) {
  if (s == "outside") return kq::BarrierMode::OutsideMargin;
  if (s == "literal") return kq::BarrierMode::LiteralBarrier;
  throw CLI::ValidationError("--barrier must be 'outside' or 'literal'");
}

kq::StepRule parse_step_rule(const std::string& s) {
  if (s == "clamped") return kq::StepRule::ClampedMin;
  if (s == "literal") return kq::StepRule::LiteralMax;
  throw CLI::ValidationError("--step-rule must be 'clamped' or 'literal'");
}

int print_verify(const std::vector<kq::VerifyRow>& rows) {
  bool all_pass = true;
  std::printf("%-36s %14s %12s  %s\n", "check", "residual", "threshold", "result");
  for (const auto& r : rows) {
    std::printf("%-36s %14.6e %12.2e  %s\n", r.name.c_str(), r.residual, r.threshold,
                r.pass ? "PASS" : "FAIL");
    all_pass = all_pass && r.pass;
  }
  std::printf("%s\n", all_pass ? "all checks passed" : "FAILURES present");
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kquad: node sets and optimal weights for Gaussian-kernel quadrature on [0,1]^d"};
  app.require_subcommand(1);

  kq::RunParams gen;
  std::string gen_out = "out";
  std::string gen_barrier = "outside", gen_step = "clamped";
  auto* generate = app.add_subcommand("generate", "run one method and write points/weights/report");
  generate->add_option("--dim", gen.dim, "dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
  generate->add_option("--n", gen.n, "number of nodes")->required();
  generate->add_option("--method", gen.method, "pwgd-fs | pwgd-gauss | sbq")
      ->check(CLI::IsMember({"pwgd-fs", "pwgd-gauss", "sbq"}));
  generate->add_option("--P", gen.P, "regularizer strength exponent");
  generate->add_option("--M", gen.M, "boundary margin");
  generate->add_option("--gamma", gen.gamma, "default step size (method default if omitted)");
  generate->add_option("--kmax", gen.kmax, "max sweeps");
  generate->add_option("--eps", gen.eps, "gradient-norm stop tolerance (dim default if omitted)");
  generate->add_option("--seed", gen.seed, "rng seed");
  generate->add_option("--out", gen_out, "output directory");
  generate->add_option("--barrier", gen_barrier, "outside | literal");
  generate->add_option("--step-rule", gen_step, "clamped | literal");

  std::string sw_nlist, sw_methods, sw_seeds = "1";
  kq::SweepParams sweep;
  std::string sweep_out = "out";
  std::string sw_barrier = "outside", sw_step = "clamped";
  auto* sweep_cmd = app.add_subcommand("sweep", "run an N-sweep over methods and seeds");
  sweep_cmd->add_option("--dim", sweep.defaults.dim, "dimension (2 or 3)")
      ->check(CLI::IsMember({2, 3}));
  sweep_cmd->add_option("--n-list", sw_nlist, "comma list of N values")->required();
  sweep_cmd->add_option("--methods", sw_methods, "comma list, e.g. pwgd-fs(0.5,0.5),sbq")
      ->required();
  sweep_cmd->add_option("--seeds", sw_seeds, "comma list of seeds");
  sweep_cmd->add_option("--P", sweep.defaults.P, "default P for methods without (P,M)");
  sweep_cmd->add_option("--M", sweep.defaults.M, "default M for methods without (P,M)");
  sweep_cmd->add_option("--gamma", sweep.defaults.gamma, "step size override");
  sweep_cmd->add_option("--kmax", sweep.defaults.kmax, "max sweeps");
  sweep_cmd->add_option("--eps", sweep.defaults.eps, "stop tolerance override");
  sweep_cmd->add_option("--out", sweep_out, "output directory");
  sweep_cmd->add_option("--barrier", sw_barrier, "outside | literal");
  sweep_cmd->add_option("--step-rule", sw_step, "clamped | literal");

  std::string suite = "all";
  double tol = 0.0;
  auto* verify = app.add_subcommand(
      "verify", "numeric verification table (theorem suites run for minutes)");
  verify->add_option("--suite", suite, "lemmas | theorem1 | theorem2 | fekete | all")
      ->check(CLI::IsMember({"lemmas", "theorem1", "theorem2", "fekete", "all"}));
  verify->add_option("--tol", tol, "loosen thresholds to at least this value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (generate->parsed()) {
      gen.barrier = parse_barrier(gen_barrier);
      gen.step_rule = parse_step_rule(gen_step);
      kq::cmd_generate(gen, gen_out);
      std::printf("wrote points.csv, weights.csv, report.json, points.svg to %s\n",
                  gen_out.c_str());
      return 0;
    }
    if (sweep_cmd->parsed()) {
      sweep.defaults.barrier = parse_barrier(sw_barrier);
      sweep.defaults.step_rule = parse_step_rule(sw_step);
      for (const auto& tok : split_list(sw_nlist)) sweep.n_list.push_back(std::stoi(tok));
      sweep.methods = split_list(sw_methods);
      for (const auto& tok : split_list(sw_seeds))
        sweep.seeds.push_back(static_cast<std::uint64_t>(std::stoull(tok)));
      kq::cmd_sweep(sweep, sweep_out);
      std::printf("wrote sweep.csv and sweep.svg to %s\n", sweep_out.c_str());
      return 0;
    }
    if (verify->parsed()) {
      return print_verify(kq::verify_suite(suite, tol));
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const kq::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
