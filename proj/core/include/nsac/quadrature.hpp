#pragma once

#include <functional>
#include <vector>

namespace nsac {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
///
/// `breakpoints` seeds the initial partition (points outside (a, b) are
/// ignored). Throws QuadratureError if the tolerance is not met within
/// max_intervals subdivisions.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {},
                           const std::vector<double>& breakpoints = {});

}  // namespace nsac
