#include "kq/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kq {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

void open_file(std::ofstream& f, const std::string& path) {
  f.open(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
}

void panel(std::ostream& os, const NodeSet& nodes, int cx, int cy, int ax_a, int ax_b,
           double x0, double y0, double side, const std::string& label) {
  os << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << side << "\" height=\"" << side
     << "\" fill=\"white\" stroke=\"#444\"/>\n";
  os << "<text x=\"" << x0 + side / 2 << "\" y=\"" << y0 + side + 16
     << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#333\">" << label << "</text>\n";
  (void)cx;
  (void)cy;
  for (int i = 0; i < nodes.size(); ++i) {
    const double px = x0 + nodes.pts(i, ax_a) * side;
    const double py = y0 + (1.0 - nodes.pts(i, ax_b)) * side;
    os << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"3\" fill=\"" << kPalette[0]
       << "\" fill-opacity=\"0.8\"/>\n";
  }
}

}  // namespace

void write_scatter_svg(const std::string& path, const NodeSet& nodes, const std::string& title) {
  const int d = nodes.dim();
  if (d != 2 && d != 3)
    throw std::invalid_argument("write_scatter_svg: d must be 2 or 3");
  const double side = 320.0, margin = 30.0;
  const int panels = (d == 2) ? 1 : 3;
  const double width = margin + panels * (side + margin);
  const double height = side + 2 * margin + 20;

  std::ofstream f;
  open_file(f, path);
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  f << "<text x=\"" << width / 2 << "\" y=\"18\" font-size=\"13\" text-anchor=\"middle\">"
    << title << "</text>\n";
  if (d == 2) {
    panel(f, nodes, 0, 1, 0, 1, margin, margin + 10, side, "x1 / x2");
  } else {
    const char* labels[3] = {"x1 / x2", "x1 / x3", "x2 / x3"};
    const int axes[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int p = 0; p < 3; ++p) {
      panel(f, nodes, 0, 1, axes[p][0], axes[p][1], margin + p * (side + margin), margin + 10,
            side, labels[p]);
    }
  }
  f << "</svg>\n";
}

void write_sweep_svg(const std::string& path, const std::vector<SweepSeries>& series,
                     const std::string& title) {
  if (series.empty()) throw std::invalid_argument("write_sweep_svg: no series");
  const double w = 640, h = 440, ml = 70, mr = 160, mt = 40, mb = 50;
  const double pw = w - ml - mr, ph = h - mt - mb;

  double nmin = 1e300, nmax = -1e300, vmin = 1e300, vmax = -1e300;
  for (const auto& s : series) {
    for (double n : s.n_values) {
      nmin = std::min(nmin, n);
      nmax = std::max(nmax, n);
    }
    for (double v : s.medians) {
      if (v > 0.0) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
    }
  }
  if (vmin > vmax) {  // all medians clamped to zero
    vmin = 1e-16;
    vmax = 1e-15;
  }
  const double floor_v = vmin * 0.5;  // zeros are drawn at the chart floor
  double lmin = std::floor(std::log10(floor_v));
  double lmax = std::ceil(std::log10(vmax));
  if (lmax <= lmin) lmax = lmin + 1;
  if (nmax <= nmin) nmax = nmin + 1;

  auto X = [&](double n) { return ml + (n - nmin) / (nmax - nmin) * pw; };
  auto Y = [&](double v) {
    const double lv = std::log10(std::max(v, floor_v));
    return mt + (lmax - lv) / (lmax - lmin) * ph;
  };

  std::ofstream f;
  open_file(f, path);
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
    << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  f << "<text x=\"" << (ml + pw / 2) << "\" y=\"20\" font-size=\"13\" text-anchor=\"middle\">"
    << title << "</text>\n";
  f << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"white\" stroke=\"#444\"/>\n";

  for (int e = static_cast<int>(lmin); e <= static_cast<int>(lmax); ++e) {
    const double y = Y(std::pow(10.0, e));
    f << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw << "\" y2=\"" << y
      << "\" stroke=\"#ddd\"/>\n";
    f << "<text x=\"" << ml - 6 << "\" y=\"" << y + 4
      << "\" font-size=\"10\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  for (const auto& s : series) {
    for (double n : s.n_values) {
      f << "<text x=\"" << X(n) << "\" y=\"" << mt + ph + 16
        << "\" font-size=\"10\" text-anchor=\"middle\">" << static_cast<int>(n) << "</text>\n";
    }
    break;
  }
  f << "<text x=\"" << ml + pw / 2 << "\" y=\"" << h - 12
    << "\" font-size=\"11\" text-anchor=\"middle\">N</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % 8];
    std::ostringstream pts;
    for (size_t i = 0; i < s.n_values.size(); ++i)
      pts << X(s.n_values[i]) << ',' << Y(s.medians[i]) << ' ';
    f << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.8\"/>\n";
    for (size_t i = 0; i < s.n_values.size(); ++i)
      f << "<circle cx=\"" << X(s.n_values[i]) << "\" cy=\"" << Y(s.medians[i])
        << "\" r=\"2.6\" fill=\"" << color << "\"/>\n";
    const double ly = mt + 14 + 18.0 * static_cast<double>(si);
    f << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 30
      << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    f << "<text x=\"" << ml + pw + 34 << "\" y=\"" << ly + 4 << "\" font-size=\"10\">" << s.label
      << "</text>\n";
  }
  f << "</svg>\n";
}

}  // namespace kq
