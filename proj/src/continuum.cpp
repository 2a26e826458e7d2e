#include "fuzcal/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fuzcal/calogero.hpp"
#include "fuzcal/errors.hpp"
#include "fuzcal/fuzzy_sphere.hpp"

namespace fuzcal {

namespace {

constexpr double kPi = std::numbers::pi;

double binomial(int m, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (m - k + i) / i;
  return b;
}

// c / (2 q'), zero where q' diverges
double half_coupling_density(const FieldConfig &cfg, double sigma) {
  const double d = cfg.dq(sigma);
  if (std::isinf(d)) return 0.0;
  if (!(d > 0.0)) {
    std::ostringstream os;
    os << "profile '" << cfg.name << "' has q'(" << sigma << ") = " << d
       << ", expected a positive value";
    throw DomainError(os.str());
  }
  return cfg.c / (2.0 * d);
}

void require_ascending(const std::vector<int> &sizes) {
  if (sizes.empty()) throw PreconditionError("convergence: no sizes given");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 2) throw DimensionError("convergence: sizes must be >= 2");
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw PreconditionError("convergence: sizes must be strictly ascending");
    }
  }
}

ConvergenceTable finish_table(std::vector<ConvergenceRow> rows) {
  ConvergenceTable t;
  t.rows = std::move(rows);
  std::sort(t.rows.begin(), t.rows.end(),
            [](const ConvergenceRow &a, const ConvergenceRow &b) { return a.n < b.n; });
  if (t.rows.size() >= 2 &&
      std::all_of(t.rows.begin(), t.rows.end(),
                  [](const ConvergenceRow &r) { return r.residual > 0.0; })) {
    std::vector<double> x, y;
    for (const ConvergenceRow &r : t.rows) {
      x.push_back(r.n);
      y.push_back(r.residual);
    }
    t.fit = fit_log_log(x, y);
  }
  return t;
}

template <class F>
std::vector<ConvergenceRow> sweep(const std::vector<int> &sizes, F &&per_size) {
  std::vector<std::future<ConvergenceRow>> jobs;
  jobs.reserve(sizes.size());
  for (int n : sizes) {
    jobs.push_back(std::async(std::launch::async, [n, &per_size] {
      return ConvergenceRow{n, per_size(n)};
    }));
  }
  std::vector<ConvergenceRow> rows;
  for (auto &j : jobs) rows.push_back(j.get());
  return rows;
}

double periodic_distance_to_zero(double phi) {
  const double r = std::remainder(phi, 2.0 * kPi);
  return std::abs(r);
}

}  // namespace

std::function<double(double)> momentum_profile(std::string_view name) {
  if (name == "zero") return [](double) { return 0.0; };
  if (name == "const") return [](double) { return 1.0; };
  if (name == "affine") return [](double s) { return 0.3 + 0.5 * s; };
  throw ConfigError("unknown momentum profile '" + std::string(name) + "'");
}

std::vector<std::string> field_preset_names() { return {"linear", "cubic", "arcsin"}; }
std::vector<std::string> momentum_profile_names() { return {"zero", "const", "affine"}; }

FieldConfig field_preset(std::string_view name, double c, std::string_view momentum) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw DomainError("coupling c must be finite and non-negative");
  }
  FieldConfig cfg;
  cfg.name = std::string(name);
  cfg.c = c;
  cfg.p = momentum_profile(momentum);
  if (name == "linear") {
    cfg.q = [](double s) { return s; };
    cfg.dq = [](double) { return 1.0; };
  } else if (name == "cubic") {
    cfg.q = [](double s) { return s + s * s * s / 3.0; };
    cfg.dq = [](double s) { return 1.0 + s * s; };
  } else if (name == "arcsin") {
    cfg.q = [](double s) { return std::asin(s); };
    cfg.dq = [](double s) {
      const double d = 1.0 - s * s;
      return d <= 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::sqrt(d);
    };
  } else {
    throw ConfigError("unknown field preset '" + std::string(name) + "'");
  }
  return cfg;
}

double sawtooth(double phi) {
  if (!std::isfinite(phi)) throw DomainError("sawtooth: non-finite argument");
  const double r = std::remainder(phi, 2.0 * kPi);  // in [-pi, pi]
  if (r == 0.0) return 0.0;
  return r > 0.0 ? r - kPi : r + kPi;
}

double sawtooth_fourier_partial_sum(double phi, int order) {
  // (i/n) e^{i n phi} + (i/(-n)) e^{-i n phi} = -2 sin(n phi) / n
  double s = 0.0;
  for (int n = 1; n <= order; ++n) s -= 2.0 * std::sin(n * phi) / n;
  return s;
}

double lax_function(const FieldConfig &cfg, const SpherePoint &pt, Diagnostics *diag) {
  const double sigma = pt.sigma();
  if (std::abs(sigma) == 1.0 && std::isfinite(cfg.dq(sigma)) && diag != nullptr) {
    std::ostringstream os;
    os << "lax_function: sigma = " << sigma << " is a boundary point and q' is finite there ('"
       << cfg.name << "'); the periodic extension needs q' to diverge";
    diag->warnings.push_back(os.str());
  }
  return cfg.p(sigma) + half_coupling_density(cfg, sigma) * sawtooth(pt.phi());
}

PhasePoint sampled_phase_point(const FieldConfig &cfg, int n) {
  const std::vector<double> sig = sample_sigmas(n);
  std::vector<double> q(n), p(n);
  for (int j = 0; j < n; ++j) {
    q[j] = cfg.q(sig[j]);
    p[j] = cfg.p(sig[j]);
    if (j > 0 && !(q[j] < q[j - 1])) {
      std::ostringstream os;
      os << "profile '" << cfg.name << "' is not strictly increasing near sigma = " << sig[j];
      throw PreconditionError(os.str());
    }
  }
  return PhasePoint(std::move(q), std::move(p), cfg.c);
}

double trace_power_integral(const FieldConfig &cfg, int m, const QuadratureOptions &opts) {
  if (m < 1) throw DomainError("trace_power_integral: m must be >= 1");
  auto integrand = [&](double s) {
    const double p = cfg.p(s);
    const double w = half_coupling_density(cfg, s) * kPi;
    double total = 0.0;
    // int E^k dphi / 2pi = pi^k / (k+1) for even k, 0 for odd k
    for (int k = 0; k <= m; k += 2) {
      total += binomial(m, k) * std::pow(p, m - k) * std::pow(w, k) / (k + 1);
    }
    return total;
  };
  return integrate(integrand, -1.0, 1.0, opts);
}

ConvergenceTable trace_convergence(const FieldConfig &cfg, int m, const std::vector<int> &sizes) {
  require_ascending(sizes);
  const double target = trace_power_integral(cfg, m);
  return finish_table(sweep(sizes, [&](int n) {
    const FuzzyMatrix l = build_lax(sampled_phase_point(cfg, n));
    Eigen::SelfAdjointEigenSolver<Matrix> es(l.matrix(), Eigen::EigenvaluesOnly);
    double tr = 0.0;
    for (double lambda : es.eigenvalues()) tr += std::pow(lambda, m);
    return std::abs(2.0 / n * tr - target);
  }));
}

ConvergenceTable offdiagonal_fourier_convergence(const FieldConfig &cfg, int band,
                                                 const std::vector<int> &sizes) {
  require_ascending(sizes);
  if (band == 0) throw RangeError("offdiagonal_fourier_convergence: band must be nonzero");
  for (int n : sizes) {
    if (std::abs(band) >= n) {
      std::ostringstream os;
      os << "band " << band << " does not fit an " << n << "x" << n << " Lax matrix";
      throw RangeError(os.str());
    }
  }
  return finish_table(sweep(sizes, [&](int n) {
    const FuzzyMatrix l = build_lax(sampled_phase_point(cfg, n));
    const std::vector<double> sig = sample_sigmas(n);
    const int margin = static_cast<int>(std::ceil(0.1 * n));
    double worst = 0.0;
    int rows = 0;
    for (int j = margin; j <= n - 1 - margin; ++j) {
      const int col = j + band;
      if (col < 0 || col >= n) continue;
      const Complex target(0.0, half_coupling_density(cfg, sig[j]) / band);
      worst = std::max(worst, std::abs(l(j, col) - target));
      ++rows;
    }
    if (rows == 0) {
      throw RangeError("offdiagonal_fourier_convergence: no interior rows for n = " +
                       std::to_string(n));
    }
    return worst;
  }));
}

double reduced_r_kernel(const FieldConfig &cfg, double sigma, double phi1, double phi2) {
  const double d = cfg.dq(sigma);
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("reduced_r_kernel: q' must be positive");
  return -(sawtooth(phi1 - phi2) + sawtooth(phi2)) / d;
}

RDistributionReport r_distribution_checks(const FieldConfig &cfg, const RDistributionGrid &grid) {
  constexpr double h = 1e-5;    // central-difference step
  constexpr double eps = 1e-10; // one-sided limits
  const double spacing = 2.0 * kPi / std::max(grid.phi_points, 1);
  if (grid.sigma_points < 1 || grid.phi_points < 4 || !(grid.margin > 2.0 * h) ||
      !(4.0 * grid.margin < spacing)) {
    std::ostringstream os;
    os << "r-distribution grid cannot isolate the discontinuity lines (sigma points "
       << grid.sigma_points << ", phi points " << grid.phi_points << ", margin " << grid.margin
       << ")";
    throw ConfigError(os.str());
  }

  RDistributionReport rep;
  std::vector<double> phis(grid.phi_points);
  for (int a = 0; a < grid.phi_points; ++a) phis[a] = -kPi + (a + 0.5) * spacing;

  for (int s = 0; s < grid.sigma_points; ++s) {
    const double sigma = -1.0 + 2.0 * (s + 1) / (grid.sigma_points + 1);
    const double d = cfg.dq(sigma);
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw PreconditionError("r_distribution_checks: q' must be positive on the grid");
    }
    auto r = [&](double a, double b) { return reduced_r_kernel(cfg, sigma, a, b); };
    const double jump = 2.0 * kPi / d;

    for (double phi2 : phis) {
      for (double phi1 : phis) {
        if (periodic_distance_to_zero(phi2) <= grid.margin + h ||
            periodic_distance_to_zero(phi1 - phi2) <= grid.margin + h) {
          continue;
        }
        const double d1 = (r(phi1 + h, phi2) - r(phi1 - h, phi2)) / (2 * h);
        const double d2 = (r(phi1, phi2 + h) - r(phi1, phi2 - h)) / (2 * h);
        rep.derivative_phi1 = std::max(rep.derivative_phi1, std::abs(d * d1 + 1.0));
        rep.derivative_phi2 = std::max(rep.derivative_phi2, std::abs(d * d2));
        ++rep.points_checked;
      }
      if (periodic_distance_to_zero(phi2) > grid.margin) {
        const double across = r(phi2 + eps, phi2) - r(phi2 - eps, phi2);
        rep.jump_diagonal = std::max(rep.jump_diagonal, std::abs(across - jump) / jump);
      }
    }
    for (double phi1 : phis) {
      if (periodic_distance_to_zero(phi1) <= grid.margin) continue;
      const double across = r(phi1, eps) - r(phi1, -eps);
      rep.jump_origin = std::max(rep.jump_origin, std::abs(across - jump) / jump);
    }
  }
  if (rep.points_checked == 0) throw ConfigError("r_distribution_checks: no admissible grid points");

  // -q' d/dphi1 r~ = d/dphi1 [E(phi1 - phi2) + E(phi2)]: its only nonzero
  // Fourier modes are (n, -n), with coefficient i n E_n.
  const int order = grid.fourier_orders.empty()
                        ? 0
                        : *std::max_element(grid.fourier_orders.begin(), grid.fourier_orders.end());
  std::vector<double> mode(order + 1, 0.0);  // i n E_n, real by oddness
  for (int n = 1; n <= order; ++n) {
    auto f = [n](double phi) { return sawtooth(phi) * std::sin(n * phi); };
    const double sin_part = integrate(f, -kPi, 0.0) + integrate(f, 0.0, kPi);
    const Complex coeff(0.0, -sin_part / (2.0 * kPi));
    mode[n] = (Complex(0.0, n) * coeff).real();
    // target from 1 - 2 pi delta(phi1 - phi2): -1 on every (n, -n), n != 0
    rep.coefficient_residual = std::max(rep.coefficient_residual, std::abs(mode[n] + 1.0));
  }

  // smooth test function exp(rho cos(phi1 - phi2) + tau cos(phi2))
  constexpr double rho = 1.0, tau = 0.5;
  const double i0t = std::cyl_bessel_i(0.0, tau);
  const double exact = 4 * kPi * kPi * i0t * (std::cyl_bessel_i(0.0, rho) - std::exp(rho));
  for (int m : grid.fourier_orders) {
    double pairing = 0.0;
    for (int n = 1; n <= m; ++n) pairing += 2.0 * mode[n] * std::cyl_bessel_i(double(n), rho);
    pairing *= 4 * kPi * kPi * i0t;
    rep.smeared.emplace_back(m, std::abs(pairing - exact) / std::abs(exact));
  }
  return rep;
}

double continuum_energy(const FieldConfig &cfg, double a, const QuadratureOptions &opts) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("continuum_energy: a must be >= 0");
  return integrate(
      [&](double s) {
        const double p = cfg.p(s);
        const double d = cfg.dq(s);
        const double inv = std::isinf(d) ? 0.0 : 1.0 / d;
        return 0.5 * (p * p + a * a * inv * inv);
      },
      -1.0, 1.0, opts);
}

double energy_coupling_residual(const FieldConfig &cfg, double a) {
  FieldConfig matched = cfg;
  matched.c = 2.0 * std::sqrt(3.0) * a / kPi;
  const double h = continuum_energy(cfg, a);
  const double t = 0.5 * trace_power_integral(matched, 2);
  const double scale = std::max(std::abs(h), std::abs(t));
  return scale == 0.0 ? 0.0 : std::abs(h - t) / scale;
}

}  // namespace fuzcal
