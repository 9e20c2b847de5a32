#pragma once

#include <Eigen/Core>

#include "kq/domain.hpp"

namespace kq {

/// Tolerances for the adaptive quadratures in this module. r_infinity
/// truncates integrals over R^d; it must be at least 10 sqrt(t) for the
/// largest t used, which puts the discarded Gaussian tail below 1e-20.
struct QuadratureTolerances {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double r_infinity = 10.0;

  static QuadratureTolerances for_time(double t, double abs_tol = 1e-10,
                                       double rel_tol = 1e-10);
};

/// Heat kernel on R^d at radius r: (4 pi t)^{-d/2} exp(-r^2 / 4t).
double heat_kernel(int d, double t, double r);

/// int_0^t (4 pi s)^{-d/2} exp(-r^2/4s) ds. Closed forms: E1(r^2/4t)/(4 pi)
/// for d = 2, erfc(r/(2 sqrt(t)))/(4 pi r) for d = 3; other d by adaptive
/// quadrature after the substitution u = r^2/(4s).
double int_heat_kernel(int d, double t, double r);

/// Tail lower-bound profile h_{d,D}(t), defined for t >= D^2/d and
/// nonnegative there. d = 2 branch: e^{-1/2} log(2t/D^2);
/// d != 2: e^{-d/4}/(1-d/2) (t^{1-d/2} - d^{d/2-1}/D^{d-2}).
double h_function(int d, double D, double t);

/// C_d(t) = int_{R^d} G_d(0,y) heat_t(||y||) dy, by radial adaptive
/// quadrature split at rho = 1 (the log/power singularity at the origin is
/// integrable). d in {2,3}.
double c_constant(int d, double t, const QuadratureTolerances& tol);

/// Same integral about an arbitrary center, evaluated in a frame NOT adapted
/// to the center (small ball around the center + far field in polar
/// coordinates about the origin with exact ray/disk splitting). Exists so the
/// center-independence claim can be checked non-vacuously. d = 2 only.
double c_constant_offcenter(int d, double t, const Eigen::Vector2d& center,
                            const QuadratureTolerances& tol);

/// Renormalized pair energy A_d(t, mu_N) evaluated by brute force:
/// (1/N^2) sum_{ij} double integral of G_d(x,y) heat_{t/2}(x-x_i)
/// heat_{t/2}(y-x_j) over truncated R^2 x R^2, as nested 2-D adaptive
/// quadratures in difference/sum coordinates (singularity along x = y becomes
/// a point in the difference plane). Deliberately does not use the
/// one-integral reduction this quantity is later checked against.
/// d = 2, N <= 3.
double a_energy_bruteforce(int d, double t, const NodeSet& nodes,
                           const QuadratureTolerances& tol);

/// int_{R^2} G_2(a,y) heat_t(||y-b||) dy by 2-D adaptive quadrature in polar
/// coordinates about a. Oracle side of the disjoint-points identity
/// (= G_2(a,b) + int_heat_kernel).
double green_heat_integral(const Eigen::Vector2d& a, const Eigen::Vector2d& b, double t,
                           const QuadratureTolerances& tol);

/// Relative residual of the energy decomposition
///   (1/N^2) sum_{i!=j} int_0^t heat = A_d - C_d/N - (1/N^2) sum_{i!=j} G_d,
/// with the right side assembled from the brute-force A_d. d = 2, N <= 3.
double check_theorem1(int d, double t, const NodeSet& nodes, const QuadratureTolerances& tol);

/// Heat-integral lower bound: true iff
/// int_heat_kernel(d,t,alpha) >= (4 pi)^{-d/2} [ d^{d/2-1}/(2 D^{d-2})
///   exp(-d alpha^2/(4D^2)) + h_{d,D}(t) ] - 1e-12.
bool check_lemma4_bound(int d, double D, double t, double alpha);

/// Gaussian pair-energy upper bound: true iff
/// (1/N^2) sum_{i!=j} exp(-a^2 r_ij^2) <= C_hat ( -G-sum + A_d - C_d/N
///   - (4 pi)^{-d/2} (N-1)/N h_{d,D}(t) ) with 1e-2 relative slack.
/// Requires t >= D^2/d and a >= sqrt(d)/(2D); d = 2, N <= 3.
bool check_theorem2(int d, double t, const NodeSet& nodes, double a, double D,
                    const QuadratureTolerances& tol);

}  // namespace kq
