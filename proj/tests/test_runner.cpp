#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kq/errors.hpp"
#include "kq/runner.hpp"

using namespace kq;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("run_single report invariants across methods") {
  for (const std::string method : {"pwgd-fs", "pwgd-gauss", "sbq"}) {
    RunParams p;
    p.method = method;
    p.dim = 2;
    p.n = 12;
    p.kmax = 40;
    p.seed = 4;
    const RunResult res = run_single(p);
    CHECK(res.report.wce_equal_sq >= 0.0);
    CHECK(res.report.wce_optimal_sq >= 0.0);
    CHECK(res.report.wce_optimal_sq <= res.report.wce_equal_sq + 1e-10);
    CHECK(res.report.min_pairwise_dist > 0.0);
    CHECK(res.rule.nodes.size() == 12);
    CHECK(res.rule.weights.size() == 12);
  }
  RunParams bad;
  bad.method = "annealing";
  CHECK_THROWS_AS(run_single(bad), std::invalid_argument);
}

TEST_CASE("method defaults") {
  RunParams fs;
  fs.method = "pwgd-fs";
  CHECK(effective_gamma(fs) == 1.0);
  CHECK(effective_eps(fs) == 1e-5);
  fs.dim = 3;
  CHECK(effective_eps(fs) == 1e-4);
  RunParams gauss;
  gauss.method = "pwgd-gauss";
  CHECK(effective_gamma(gauss) == 0.1);
  gauss.gamma = 0.7;
  CHECK(effective_gamma(gauss) == 0.7);
}

TEST_CASE("report json round trip and schema") {
  RunParams p;
  p.method = "pwgd-fs";
  p.n = 8;
  p.kmax = 20;
  const RunReport r = run_single(p).report;
  const std::string text = report_to_json(r);
  CHECK(text.find("\"schema_version\": 1") != std::string::npos);
  const RunReport back = report_from_json(text);
  CHECK(back.method == r.method);
  CHECK(back.n == r.n);
  CHECK(back.wce_optimal_sq == r.wce_optimal_sq);
  CHECK(back.wce_equal_sq == r.wce_equal_sq);
  CHECK(back.min_pairwise_dist == r.min_pairwise_dist);
  CHECK(back.seed == r.seed);
}

TEST_CASE("cmd_generate writes the four artifacts deterministically") {
  RunParams p;
  p.method = "pwgd-fs";
  p.dim = 2;
  p.n = 10;
  p.P = 0.6;
  p.M = 0.35;
  p.kmax = 30;
  p.seed = 1;

  const auto dir1 = fresh_dir("kq_gen_a");
  const auto dir2 = fresh_dir("kq_gen_b");
  cmd_generate(p, dir1.string());
  cmd_generate(p, dir2.string());
  for (const char* name : {"points.csv", "weights.csv", "report.json", "points.svg"})
    CHECK(std::filesystem::exists(dir1 / name));

  CHECK(slurp(dir1 / "points.csv") == slurp(dir2 / "points.csv"));
  CHECK(slurp(dir1 / "weights.csv") == slurp(dir2 / "weights.csv"));
  CHECK(slurp(dir1 / "points.svg") == slurp(dir2 / "points.svg"));
  // Wall time is the one inherently non-reproducible field.
  RunReport ra = report_from_json(slurp(dir1 / "report.json"));
  RunReport rb = report_from_json(slurp(dir2 / "report.json"));
  ra.wall_seconds = rb.wall_seconds = 0.0;
  CHECK(report_to_json(ra) == report_to_json(rb));

  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("3-d scatter renders three panels") {
  RunParams p;
  p.method = "sbq";
  p.dim = 3;
  p.n = 9;
  const auto dir = fresh_dir("kq_gen_3d");
  cmd_generate(p, dir.string());
  const std::string svg = slurp(dir / "points.svg");
  CHECK(svg.find("x1 / x2") != std::string::npos);
  CHECK(svg.find("x1 / x3") != std::string::npos);
  CHECK(svg.find("x2 / x3") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("method token parsing") {
  RunParams defaults;
  const RunParams a = parse_method_token("pwgd-fs(0.6,0.35)", defaults);
  CHECK(a.method == "pwgd-fs");
  CHECK(a.P == 0.6);
  CHECK(a.M == 0.35);
  const RunParams b = parse_method_token("sbq", defaults);
  CHECK(b.method == "sbq");
  CHECK_THROWS_AS(parse_method_token("pwgd-fs(0.6", defaults), std::invalid_argument);
  CHECK_THROWS_AS(parse_method_token("nope", defaults), std::invalid_argument);
}

TEST_CASE("cmd_sweep single row, idempotent overwrite") {
  SweepParams sp;
  sp.n_list = {8};
  sp.methods = {"pwgd-fs(0.5,0.5)"};
  sp.seeds = {3};
  sp.defaults.dim = 2;
  sp.defaults.kmax = 25;
  const auto dir = fresh_dir("kq_sweep_one");

  cmd_sweep(sp, dir.string());
  const std::string first = slurp(dir / "sweep.csv");
  CHECK(std::count(first.begin(), first.end(), '\n') == 2);  // header + one row
  CHECK(first.find("pwgd-fs(0.5,0.5)") != std::string::npos);

  cmd_sweep(sp, dir.string());
  const std::string second = slurp(dir / "sweep.csv");
  CHECK(std::count(second.begin(), second.end(), '\n') == 2);  // overwritten, not appended
  CHECK(std::filesystem::exists(dir / "sweep.svg"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("cmd_sweep multi-method rows are complete and capped by KQ_THREADS") {
  setenv("KQ_THREADS", "2", 1);
  SweepParams sp;
  sp.n_list = {6, 10};
  sp.methods = {"pwgd-fs(0.5,0.5)", "sbq"};
  sp.seeds = {1, 2};
  sp.defaults.dim = 2;
  sp.defaults.kmax = 20;
  const auto dir = fresh_dir("kq_sweep_multi");
  cmd_sweep(sp, dir.string());
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 2 * 2);
  unsetenv("KQ_THREADS");
  std::filesystem::remove_all(dir);

  SweepParams empty;
  CHECK_THROWS_AS(cmd_sweep(empty, (dir / "x").string()), std::invalid_argument);
}

TEST_CASE("fekete verify suite is green") {
  const auto rows = verify_suite("fekete");
  REQUIRE(!rows.empty());
  for (const auto& row : rows) {
    INFO(row.name, " residual=", row.residual);
    CHECK(row.pass);
  }
}

TEST_CASE("unknown suite is a usage error") {
  CHECK_THROWS_AS(verify_suite("theorems"), std::invalid_argument);
}

TEST_CASE("cli binary exit codes") {
  const char* bin = std::getenv("KQUAD_BIN");
  if (!bin) return;  // exercised only under ctest, which exports the path
  const std::string base(bin);
  auto run = [](const std::string& cmd) { return std::system(cmd.c_str()) / 256; };

  CHECK(run(base + " --help > /dev/null 2>&1") == 0);
  CHECK(run(base + " generate --n 5 --method annealing > /dev/null 2>&1") == 1);
  CHECK(run(base + " verify --suite fekete > /dev/null 2>&1") == 0);

  const auto dir = fresh_dir("kq_cli_gen");
  const std::string cmd = base + " generate --dim 2 --n 6 --method sbq --out " + dir.string() +
                          " > /dev/null 2>&1";
  CHECK(run(cmd) == 0);
  CHECK(std::filesystem::exists(dir / "report.json"));
  std::filesystem::remove_all(dir);
}
