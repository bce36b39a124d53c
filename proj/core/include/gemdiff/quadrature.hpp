#pragma once

#include <functional>

namespace gemdiff {

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [lo, hi].
/// Subdivides the interval with the worst local error estimate until the
/// accumulated error is below max(abs_tol, rel_tol * |integral|).
/// Throws QuadratureError when the tolerance cannot be reached or the
/// integrand produces non-finite values.
double integrate_gk(const std::function<double(double)>& f, double lo, double hi,
                    double rel_tol = 1e-8, double abs_tol = 0.0,
                    int max_intervals = 2000);

}  // namespace gemdiff
