#include "kq/special.hpp"

#include <cmath>
#include <stdexcept>

namespace kq {

namespace {
constexpr double kEulerGamma = 0.57721566490153286061;
}

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("exp_integral_e1: x must be > 0");
  if (x < 1.0) {
    // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    double sum = -kEulerGamma - std::log(x);
    double term = 1.0;
    for (int k = 1; k <= 64; ++k) {
      term *= -x / k;
      const double add = -term / k;
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  // e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...)))), modified Lentz.
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k <= 256; ++k) {
    const double a = -static_cast<double>(k) * k;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x) * h;
}

}  // namespace kq
