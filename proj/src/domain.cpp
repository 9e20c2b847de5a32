#include "kq/domain.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kq/errors.hpp"

namespace kq {

DomainBox::DomainBox(int d) : dim(d) {
  if (d < 1) throw std::invalid_argument("DomainBox: dim must be >= 1");
}

double DomainBox::diameter() const { return std::sqrt(static_cast<double>(dim)); }

bool DomainBox::contains(const Eigen::VectorXd& x) const {
  if (x.size() != dim) return false;
  for (int l = 0; l < dim; ++l) {
    if (!(x[l] >= 0.0 && x[l] <= 1.0)) return false;
  }
  return true;
}

NodeSet sample_uniform(const DomainBox& domain, int n, SeededRng& rng) {
  if (n < 1) throw std::invalid_argument("sample_uniform: n must be >= 1");
  const int d = domain.dim;
  NodeSet out(n, d);
  for (int i = 0; i < n; ++i) {
    bool ok = false;
    while (!ok) {
      for (int l = 0; l < d; ++l) out.pts(i, l) = rng.next_double();
      ok = true;
      for (int j = 0; j < i; ++j) {
        if ((out.pts.row(i) - out.pts.row(j)).norm() < 1e-12) {
          ok = false;  // resample the offender
          break;
        }
      }
    }
  }
  return out;
}

double min_pairwise_distance(const NodeSet& nodes) {
  const int n = nodes.size();
  if (n < 2) throw std::invalid_argument("min_pairwise_distance: need at least 2 nodes");
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      best = std::min(best, (nodes.pts.row(i) - nodes.pts.row(j)).norm());
    }
  }
  return best;
}

void write_points_csv(const std::string& path, const NodeSet& nodes) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  for (int l = 0; l < nodes.dim(); ++l) f << (l ? "," : "") << "x" << (l + 1);
  f << "\n";
  char buf[64];
  for (int i = 0; i < nodes.size(); ++i) {
    for (int l = 0; l < nodes.dim(); ++l) {
      std::snprintf(buf, sizeof(buf), "%.17g", nodes.pts(i, l));
      f << (l ? "," : "") << buf;
    }
    f << "\n";
  }
}

NodeSet read_points_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error(path + ": empty file");
  int d = 1;
  for (char c : line)
    if (c == ',') ++d;
  std::vector<double> vals;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int got = 0;
    while (std::getline(ss, cell, ',')) {
      vals.push_back(std::stod(cell));
      ++got;
    }
    if (got != d) throw std::runtime_error(path + ": ragged row");
  }
  const int n = static_cast<int>(vals.size()) / d;
  NodeSet out(n, d);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < d; ++l) out.pts(i, l) = vals[static_cast<size_t>(i) * d + l];
  return out;
}

void write_weights_csv(const std::string& path, const Eigen::VectorXd& weights) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << "w\n";
  char buf[64];
  for (int i = 0; i < weights.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", weights[i]);
    f << buf << "\n";
  }
}

}  // namespace kq
