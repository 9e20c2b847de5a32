#pragma once

namespace kq {

/// Exponential integral E1(x) = int_x^inf e^{-u}/u du for x > 0.
/// Power series below 1, modified-Lentz continued fraction above; both
/// regimes hold ~1e-15 relative error (cross-checked against quadrature).
double exp_integral_e1(double x);

}  // namespace kq
