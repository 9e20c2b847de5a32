#include "kq/report.hpp"

#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace kq {

namespace {
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string report_to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["method"] = r.method;
  j["dim"] = r.dim;
  j["n"] = r.n;
  j["P"] = r.P;
  j["M"] = r.M;
  j["gamma"] = r.gamma;
  j["eps"] = r.eps;
  j["seed"] = r.seed;
  j["wce_equal_sq"] = r.wce_equal_sq;
  j["wce_optimal_sq"] = r.wce_optimal_sq;
  j["min_pairwise_dist"] = r.min_pairwise_dist;
  j["sweeps"] = r.sweeps;
  j["wall_seconds"] = r.wall_seconds;
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  RunReport r;
  r.method = j.at("method").get<std::string>();
  r.dim = j.at("dim").get<int>();
  r.n = j.at("n").get<int>();
  r.P = j.at("P").get<double>();
  r.M = j.at("M").get<double>();
  r.gamma = j.at("gamma").get<double>();
  r.eps = j.at("eps").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.wce_equal_sq = j.at("wce_equal_sq").get<double>();
  r.wce_optimal_sq = j.at("wce_optimal_sq").get<double>();
  r.min_pairwise_dist = j.at("min_pairwise_dist").get<double>();
  r.sweeps = j.at("sweeps").get<int>();
  r.wall_seconds = j.at("wall_seconds").get<double>();
  return r;
}

std::string report_csv_header() {
  return "method,dim,n,P,M,gamma,eps,seed,wce_equal_sq,wce_optimal_sq,"
         "min_pairwise_dist,sweeps,wall_seconds";
}

std::string report_csv_row(const RunReport& r) {
  std::ostringstream os;
  os << r.method << ',' << r.dim << ',' << r.n << ',' << fmt17(r.P) << ',' << fmt17(r.M) << ','
     << fmt17(r.gamma) << ',' << fmt17(r.eps) << ',' << r.seed << ',' << fmt17(r.wce_equal_sq)
     << ',' << fmt17(r.wce_optimal_sq) << ',' << fmt17(r.min_pairwise_dist) << ',' << r.sweeps
     << ',' << fmt17(r.wall_seconds);
  return os.str();
}

}  // namespace kq
