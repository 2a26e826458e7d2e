#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzcal/numerics.hpp"
#include "fuzcal/phase_point.hpp"
#include "fuzcal/sphere.hpp"

namespace fuzcal {

/// Classical field data on sigma in [-1, 1]: positions q(sigma) with
/// derivative q'(sigma), momenta p(sigma) and the coupling c.
struct FieldConfig {
  std::string name;
  std::function<double(double)> q;
  std::function<double(double)> dq;
  std::function<double(double)> p;
  double c = 1.0;
};

/// Presets "linear" (q = sigma), "cubic" (q = sigma + sigma^3/3) and
/// "arcsin". Momentum profiles: "zero", "const" (p = 1), "affine"
/// (p = 0.3 + 0.5 sigma).
FieldConfig field_preset(std::string_view name, double c = 1.0,
                         std::string_view momentum = "zero");
std::vector<std::string> field_preset_names();
std::vector<std::string> momentum_profile_names();
std::function<double(double)> momentum_profile(std::string_view name);

/// 2 pi periodic sawtooth, phi - pi sign(phi) on [-pi, pi], with E(0) = 0.
double sawtooth(double phi);
/// sum_{0 < |n| <= order} (i/n) e^{i n phi}
double sawtooth_fourier_partial_sum(double phi, int order);

struct Diagnostics {
  std::vector<std::string> warnings;
};

/// L(sigma, phi) = p(sigma) + c/(2 q'(sigma)) E(phi). At sigma = +-1 with a
/// finite q' a warning is appended to diag (when given).
double lax_function(const FieldConfig &cfg, const SpherePoint &pt,
                    Diagnostics *diag = nullptr);

/// q_j = q(sigma_j), p_j = p(sigma_j) on the fuzzy sampling points.
PhasePoint sampled_phase_point(const FieldConfig &cfg, int n);

/// (1/2pi) int omega L^m, reduced analytically in phi.
double trace_power_integral(const FieldConfig &cfg, int m,
                            const QuadratureOptions &opts = {});

struct ConvergenceRow {
  int n = 0;
  double residual = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  /// Absent when some residual vanishes or fewer than two sizes are given.
  std::optional<LogLogFit> fit;
};

/// |(2/N) tr L(N)^m - trace_power_integral| for each size.
ConvergenceTable trace_convergence(const FieldConfig &cfg, int m,
                                   const std::vector<int> &sizes);

/// Max over interior rows of |L(N)_{j,j+k} - i c / (2 q'(sigma_j) k)|.
/// Rows within 10% of either end are skipped.
ConvergenceTable offdiagonal_fourier_convergence(const FieldConfig &cfg, int band,
                                                 const std::vector<int> &sizes);

/// r~(sigma; phi1, phi2) = -(E(phi1 - phi2) + E(phi2)) / q'(sigma)
double reduced_r_kernel(const FieldConfig &cfg, double sigma, double phi1, double phi2);

struct RDistributionGrid {
  int sigma_points = 7;
  int phi_points = 48;
  /// Distance kept from the discontinuity lines phi1 = phi2 and phi2 = 0.
  double margin = 1e-3;
  std::vector<int> fourier_orders{2, 4, 8, 16};
};

struct RDistributionReport {
  int points_checked = 0;
  /// max |q' d r~/d phi1 + 1| and max |q' d r~/d phi2|
  double derivative_phi1 = 0.0;
  double derivative_phi2 = 0.0;
  /// max relative deviation of the jumps from 2 pi / q'
  double jump_diagonal = 0.0;
  double jump_origin = 0.0;
  /// Fourier coefficients of -q' d/dphi1 r~ against those of 1 - 2 pi delta(phi1 - phi2)
  double coefficient_residual = 0.0;
  /// (order, |truncated pairing - exact pairing|) with a smooth test function
  std::vector<std::pair<int, double>> smeared;
};

RDistributionReport r_distribution_checks(const FieldConfig &cfg,
                                          const RDistributionGrid &grid = {});

/// H = (1/2) int (p^2 + a^2 / q'^2) dsigma
double continuum_energy(const FieldConfig &cfg, double a,
                        const QuadratureOptions &opts = {});

/// Relative gap between continuum_energy(cfg, a) and
/// (1/2) trace_power_integral(cfg with c = 2 sqrt(3) a / pi, 2).
double energy_coupling_residual(const FieldConfig &cfg, double a);

}  // namespace fuzcal
