#pragma once

#include <string>
#include <vector>

#include "kq/domain.hpp"

namespace kq {

/// Scatter plot of a node set over the unit square. For d = 3 the output is
/// three orthographic panels (xy, xz, yz). Plain hand-rolled SVG, no deps.
void write_scatter_svg(const std::string& path, const NodeSet& nodes, const std::string& title);

struct SweepSeries {
  std::string label;
  std::vector<double> n_values;
  std::vector<double> medians;  // same length as n_values
};

/// Line chart of median squared optimal-weight error versus N, log-scale
/// vertical axis, one polyline per method.
void write_sweep_svg(const std::string& path, const std::vector<SweepSeries>& series,
                     const std::string& title);

}  // namespace kq
