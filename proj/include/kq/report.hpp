#pragma once

#include <cstdint>
#include <string>

namespace kq {

/// Per-run metrics: everything a comparison chart needs, one row per run.
struct RunReport {
  std::string method;
  int dim = 0;
  int n = 0;
  double P = 0.0;
  double M = 0.0;
  double gamma = 0.0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  double wce_equal_sq = 0.0;
  double wce_optimal_sq = 0.0;
  double min_pairwise_dist = 0.0;
  int sweeps = 0;
  double wall_seconds = 0.0;
};

inline constexpr int kReportSchemaVersion = 1;

std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);

/// CSV header / row matching the sweep output (17 significant digits).
std::string report_csv_header();
std::string report_csv_row(const RunReport& r);

}  // namespace kq
