#pragma once

#include <functional>

namespace kq {

/// Adaptive Gauss--Kronrod (G7,K15) on a finite interval. The error estimate
/// per cell is |K15 - G7| with the usual QUADPACK rescaling; cells are
/// bisected until abs_tol or rel_tol is met, or max_depth is reached.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, double rel_tol = 1e-12,
                          int max_depth = 48);

}  // namespace kq
