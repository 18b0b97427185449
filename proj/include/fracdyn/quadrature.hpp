#pragma once

#include <cstddef>
#include <functional>

namespace fracdyn {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  /// Maximum number of subintervals kept by the adaptive bisection.
  std::size_t max_intervals = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t intervals = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod integration on [a, b].
/// Throws ConvergenceError once max_intervals is exceeded without meeting
/// max(abs_tol, rel_tol * |value|).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace fracdyn
