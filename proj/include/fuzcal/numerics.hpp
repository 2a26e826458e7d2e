#pragma once

#include <functional>
#include <span>

namespace fuzcal {

struct QuadratureOptions {
  double relative_tolerance = 1e-10;
  double absolute_tolerance = 1e-13;
  unsigned max_depth = 40;
};

/// Adaptive Gauss-Kronrod integral of f over [a, b]. Throws NumericalError
/// when the error estimate stays above the requested tolerance.
double integrate(const std::function<double(double)> &f, double a, double b,
                 const QuadratureOptions &opts = {});

/// Least-squares line through (log x, log y).
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Requires at least two points, all strictly positive.
LogLogFit fit_log_log(std::span<const double> x, std::span<const double> y);

}  // namespace fuzcal
