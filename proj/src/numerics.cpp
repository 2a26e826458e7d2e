#include "fuzcal/numerics.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fuzcal/errors.hpp"

namespace fuzcal {

double integrate(const std::function<double(double)> &f, double a, double b,
                 const QuadratureOptions &opts) {
  if (a == b) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, opts.max_depth, opts.relative_tolerance, &error, &l1);
  if (!std::isfinite(value)) {
    throw NumericalError("quadrature produced a non-finite value");
  }
  const double allowed =
      std::max(opts.relative_tolerance * l1, opts.absolute_tolerance);
  if (error > allowed) {
    std::ostringstream os;
    os << "quadrature did not converge on [" << a << ", " << b
       << "]: estimate " << value << ", error " << error << ", allowed "
       << allowed;
    throw NumericalError(os.str());
  }
  return value;
}

LogLogFit fit_log_log(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw PreconditionError("fit: size mismatch");
  if (x.size() < 2) throw PreconditionError("fit: need at least two points");
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw PreconditionError("fit: log-log data must be strictly positive");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw PreconditionError("fit: abscissae are all equal");
  LogLogFit fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

}  // namespace fuzcal
