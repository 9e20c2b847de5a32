#pragma once

// Test-side oracles, deliberately independent of the library's numerical
// paths: composite Gauss-Legendre (different node family from the production
// Gauss-Kronrod engine), central finite differences, and plain double loops.

#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

// 16-point Gauss-Legendre nodes/weights on [-1,1], positive half.
inline constexpr double kGlX[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline constexpr double kGlW[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

inline double gl16(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 8; ++i) s += kGlW[i] * (f(c - h * kGlX[i]) + f(c + h * kGlX[i]));
  return s * h;
}

// Composite GL with panel doubling until two refinements agree.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_panels = 1 << 14) {
  int panels = 4;
  double prev = 0.0;
  for (int p = 0; p < panels; ++p)
    prev += gl16(f, a + (b - a) * p / panels, a + (b - a) * (p + 1) / panels);
  while (panels < max_panels) {
    panels *= 2;
    double cur = 0.0;
    for (int p = 0; p < panels; ++p)
      cur += gl16(f, a + (b - a) * p / panels, a + (b - a) * (p + 1) / panels);
    if (std::abs(cur - prev) <= tol * (std::abs(cur) + 1.0)) return cur;
    prev = cur;
  }
  return prev;
}

inline double integrate2d(const std::function<double(double, double)>& f, double ax, double bx,
                          double ay, double by, double tol = 1e-11) {
  return integrate(
      [&](double x) {
        return integrate([&, x](double y) { return f(x, y); }, ay, by, tol * 0.1);
      },
      ax, bx, tol);
}

// Central finite differences of a multivariate scalar function.
inline std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> x, double h = 1e-5) {
  std::vector<double> g(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double orig = x[i];
    x[i] = orig + h;
    const double fp = f(x);
    x[i] = orig - h;
    const double fm = f(x);
    x[i] = orig;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace oracles
