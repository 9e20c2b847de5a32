#include "kq/theory.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "kq/energy.hpp"
#include "kq/errors.hpp"
#include "kq/quadrature.hpp"
#include "kq/special.hpp"

namespace kq {

namespace {

// Trapezoid over one period, doubling the node count until stable. The
// integrands here are smooth and periodic, so convergence is geometric;
// adaptivity is only needed for the occasional kink (disk-exclusion rays).
double angular_integral(const std::function<double(double)>& f, double rel_tol,
                        int n_start = 32, int n_max = 2048) {
  const double two_pi = 2.0 * M_PI;
  int n = n_start;
  double prev = 0.0;
  for (int k = 0; k < n; ++k) prev += f(two_pi * k / n);
  prev *= two_pi / n;
  while (n < n_max) {
    n *= 2;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += f(two_pi * k / n);
    const double cur = sum * two_pi / n;
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur) + 1e-300) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

QuadratureTolerances QuadratureTolerances::for_time(double t, double abs_tol, double rel_tol) {
  QuadratureTolerances tol;
  tol.abs_tol = abs_tol;
  tol.rel_tol = rel_tol;
  tol.r_infinity = std::max(10.0 * std::sqrt(t), 10.0);
  return tol;
}

double heat_kernel(int d, double t, double r) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel: t must be > 0");
  if (d < 1) throw std::invalid_argument("heat_kernel: d must be >= 1");
  return std::pow(4.0 * M_PI * t, -0.5 * d) * std::exp(-r * r / (4.0 * t));
}

double int_heat_kernel(int d, double t, double r) {
  if (!(t > 0.0)) throw std::invalid_argument("int_heat_kernel: t must be > 0");
  if (!(r > 0.0))
    throw std::invalid_argument("int_heat_kernel: r must be > 0 (integral diverges at r = 0)");
  const double u0 = r * r / (4.0 * t);
  if (d == 2) return exp_integral_e1(u0) / (4.0 * M_PI);
  if (d == 3) return std::erfc(r / (2.0 * std::sqrt(t))) / (4.0 * M_PI * r);
  // u = r^2/(4s):  (pi r^2)^{-d/2} (r^2/4) int_{u0}^inf u^{d/2-2} e^{-u} du.
  const double scale = std::pow(M_PI * r * r, -0.5 * d) * (r * r / 4.0);
  const double p = 0.5 * d - 2.0;
  const double tail = integrate_adaptive(
      [p](double u) { return std::pow(u, p) * std::exp(-u); }, u0, u0 + 60.0, 1e-14, 1e-12);
  return scale * tail;
}

double h_function(int d, double D, double t) {
  if (d < 2) throw std::invalid_argument("h_function: d must be >= 2");
  if (!(D > 0.0)) throw std::invalid_argument("h_function: D must be > 0");
  if (t < D * D / d - 1e-15) throw std::invalid_argument("h_function: t must be >= D^2/d");
  if (d == 2) return std::exp(-0.5) * std::log(2.0 * t / (D * D));
  return std::exp(-0.25 * d) / (1.0 - 0.5 * d) *
         (std::pow(t, 1.0 - 0.5 * d) - std::pow(static_cast<double>(d), 0.5 * d - 1.0) /
                                           std::pow(D, d - 2));
}

double c_constant(int d, double t, const QuadratureTolerances& tol) {
  if (d != 2 && d != 3) throw std::invalid_argument("c_constant: radial paths cover d in {2,3}");
  if (!(t > 0.0)) throw std::invalid_argument("c_constant: t must be > 0");
  const double R = std::max(tol.r_infinity, 10.0 * std::sqrt(t));
  auto profile = [d, t](double rho) {
    return fundamental_solution_r(d, rho) * heat_kernel(d, t, rho) * std::pow(rho, d - 1);
  };
  const double near = integrate_adaptive(profile, 1e-14, 1.0, tol.abs_tol * 0.25, tol.rel_tol);
  const double far = integrate_adaptive(profile, 1.0, R, tol.abs_tol * 0.25, tol.rel_tol);
  return sphere_surface_area(d) * (near + far);
}

double c_constant_offcenter(int d, double t, const Eigen::Vector2d& center,
                            const QuadratureTolerances& tol) {
  if (d != 2) throw std::invalid_argument("c_constant_offcenter: d = 2 only");
  if (!(t > 0.0)) throw std::invalid_argument("c_constant_offcenter: t must be > 0");
  const double r0 = 0.25;  // ball that isolates the log singularity at the center
  const double R = tol.r_infinity + center.norm();

  // Ball part, polar about the center (the singular profile itself).
  const double near = integrate_adaptive(
      [t](double rho) { return std::log(rho) * heat_kernel(2, t, rho) * rho; }, 1e-14, r0,
      tol.abs_tol * 0.25, tol.rel_tol);

  // Far field in polar coordinates about the ORIGIN with the ball excluded;
  // each ray crosses the excluded disk on an explicit segment.
  auto ray_value = [&](double theta) {
    const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    auto f = [&](double rho) {
      const double dist = (rho * u - center).norm();
      return fundamental_solution_r(2, dist) * heat_kernel(2, t, dist) * rho;
    };
    const double ub = u.dot(center);
    const double disc = ub * ub - center.squaredNorm() + r0 * r0;
    double total = 0.0;
    if (disc > 0.0) {
      const double sq = std::sqrt(disc);
      const double rho1 = std::max(0.0, ub - sq);
      const double rho2 = std::max(0.0, ub + sq);
      if (rho1 > 0.0)
        total += integrate_adaptive(f, 0.0, rho1, tol.abs_tol * 1e-3, tol.rel_tol * 0.1);
      if (rho2 < R)
        total += integrate_adaptive(f, rho2, R, tol.abs_tol * 1e-3, tol.rel_tol * 0.1);
    } else {
      total += integrate_adaptive(f, 0.0, R, tol.abs_tol * 1e-3, tol.rel_tol * 0.1);
    }
    return total;
  };
  const double far = angular_integral(ray_value, tol.rel_tol * 0.5, 64);
  return near + far;
}

namespace {

// One ordered-pair term of the brute-force pair energy: the 4-D integral of
// G_2(x,y) heat_s(x - xi) heat_s(y - xj) in the substituted variables
// w = (x-xi) - (y-xj), p = (x-xi) + (y-xj) (Jacobian 1/4). The p-integral is
// evaluated numerically -- by construction this path never invokes the
// Gaussian semigroup identity it is used to cross-check.
double pair_term_bruteforce(const Eigen::Vector2d& delta, double t,
                            const QuadratureTolerances& tol) {
  const double s = 0.5 * t;
  const double inv16s = 1.0 / (16.0 * s);
  const double norm_h = 1.0 / (4.0 * M_PI * s);  // heat prefactor, applied twice
  const double rp = std::max(10.0 * std::sqrt(t), 10.0);

  auto inner = [&](const Eigen::Vector2d& w) {
    auto ring = [&](double theta) {
      const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
      auto f = [&](double rho) {
        const Eigen::Vector2d p = rho * u;
        const double e = ((p + w).squaredNorm() + (p - w).squaredNorm()) * inv16s;
        return std::exp(-e) * rho;
      };
      return integrate_adaptive(f, 0.0, rp, 1e-13, 1e-9);
    };
    return norm_h * norm_h * angular_integral(ring, 1e-8, 32, 256);
  };

  const Eigen::Vector2d w0 = -delta;  // G_2's singular point in the w-plane
  const double rw = tol.r_infinity + delta.norm() + 1.0;
  auto outer_ring = [&](double theta) {
    const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    auto f = [&](double rho) {
      const double g = std::log(rho) / (2.0 * M_PI);
      return g * inner(w0 + rho * u) * rho;
    };
    return integrate_adaptive(f, 1e-14, 1.0, tol.abs_tol, tol.rel_tol) +
           integrate_adaptive(f, 1.0, rw, tol.abs_tol, tol.rel_tol);
  };
  return 0.25 * angular_integral(outer_ring, tol.rel_tol, 32, 512);
}

}  // namespace

double a_energy_bruteforce(int d, double t, const NodeSet& nodes,
                           const QuadratureTolerances& tol) {
  if (d != 2) throw std::invalid_argument("a_energy_bruteforce: d = 2 only");
  if (nodes.dim() != 2) throw std::invalid_argument("a_energy_bruteforce: nodes must be 2-D");
  if (nodes.size() > 3)
    throw std::invalid_argument("a_energy_bruteforce: N <= 3 (cost frontier of this oracle)");
  if (!(t > 0.0)) throw std::invalid_argument("a_energy_bruteforce: t must be > 0");
  const int n = nodes.size();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Eigen::Vector2d delta = (nodes.pts.row(i) - nodes.pts.row(j)).transpose();
      sum += pair_term_bruteforce(delta, t, tol);
    }
  }
  return sum / (static_cast<double>(n) * n);
}

double green_heat_integral(const Eigen::Vector2d& a, const Eigen::Vector2d& b, double t,
                           const QuadratureTolerances& tol) {
  const double R = tol.r_infinity + (a - b).norm() + 1.0;
  auto ring = [&](double theta) {
    const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    auto f = [&](double rho) {
      const double dist = (a + rho * u - b).norm();
      return (std::log(rho) / (2.0 * M_PI)) * heat_kernel(2, t, dist) * rho;
    };
    return integrate_adaptive(f, 1e-14, 1.0, tol.abs_tol, tol.rel_tol) +
           integrate_adaptive(f, 1.0, R, tol.abs_tol, tol.rel_tol);
  };
  return angular_integral(ring, tol.rel_tol, 64);
}

double check_theorem1(int d, double t, const NodeSet& nodes, const QuadratureTolerances& tol) {
  if (d != 2) throw std::invalid_argument("check_theorem1: d = 2 only (brute-force path)");
  const int n = nodes.size();
  if (n < 2 || n > 3) throw std::invalid_argument("check_theorem1: N must be 2 or 3");
  if (!(min_pairwise_distance(nodes) > 0.0))
    throw std::invalid_argument("check_theorem1: nodes must be distinct");

  double lhs = 0.0;
  double g_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double r = (nodes.pts.row(i) - nodes.pts.row(j)).norm();
      lhs += int_heat_kernel(d, t, r);
      g_sum += fundamental_solution_r(d, r);
    }
  }
  const double n2 = static_cast<double>(n) * n;
  lhs /= n2;
  g_sum /= n2;

  const double a_val = a_energy_bruteforce(d, t, nodes, tol);
  const double c_val = c_constant(d, t, tol);
  const double rhs = a_val - c_val / n - g_sum;
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
}

bool check_lemma4_bound(int d, double D, double t, double alpha) {
  if (!(alpha > 0.0) || alpha > D)
    throw std::invalid_argument("check_lemma4_bound: alpha must be in (0, D]");
  if (t < D * D / d - 1e-15)
    throw std::invalid_argument("check_lemma4_bound: t must be >= D^2/d");
  const double lhs = int_heat_kernel(d, t, alpha);
  const double rhs =
      std::pow(4.0 * M_PI, -0.5 * d) *
      (std::pow(static_cast<double>(d), 0.5 * d - 1.0) / (2.0 * std::pow(D, d - 2)) *
           std::exp(-d * alpha * alpha / (4.0 * D * D)) +
       h_function(d, D, t));
  return lhs >= rhs - 1e-12;
}

bool check_theorem2(int d, double t, const NodeSet& nodes, double a, double D,
                    const QuadratureTolerances& tol) {
  if (d != 2) throw std::invalid_argument("check_theorem2: d = 2 only (brute-force path)");
  const int n = nodes.size();
  if (n < 2 || n > 3) throw std::invalid_argument("check_theorem2: N must be 2 or 3");
  if (a < std::sqrt(static_cast<double>(d)) / (2.0 * D))
    throw std::invalid_argument("check_theorem2: requires a >= sqrt(d)/(2D)");
  if (t < D * D / d - 1e-15)
    throw std::invalid_argument("check_theorem2: t must be >= D^2/d");

  double gauss_energy = 0.0;
  double g_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double r2 = (nodes.pts.row(i) - nodes.pts.row(j)).squaredNorm();
      gauss_energy += std::exp(-a * a * r2);
      g_sum += fundamental_solution_r(d, std::sqrt(r2));
    }
  }
  const double n2 = static_cast<double>(n) * n;
  gauss_energy /= n2;
  g_sum /= n2;

  const UpperBoundConstants ub = ub_constants(d, D, t);
  const double a_val = a_energy_bruteforce(d, t, nodes, tol);
  const double c_val = c_constant(d, t, tol);
  const double rhs = ub.c_hat * (-g_sum + a_val - c_val / n -
                                 std::pow(4.0 * M_PI, -0.5 * d) * (n - 1.0) / n * ub.h_value);
  return gauss_energy <= rhs + 1e-2 * std::max(std::abs(gauss_energy), std::abs(rhs));
}

}  // namespace kq
