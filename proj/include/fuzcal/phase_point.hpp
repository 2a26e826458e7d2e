#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace fuzcal {

inline constexpr double kDefaultMinGap = 1e-8;

/// Point of the N-particle phase space with Darboux coordinates (q, p) and
/// continuum coupling c. The Calogero coupling is kappa = c / N.
class PhasePoint {
public:
  PhasePoint(std::vector<double> q, std::vector<double> p, double c,
             double min_gap = kDefaultMinGap);

  int n() const { return static_cast<int>(q_.size()); }
  std::span<const double> q() const { return q_; }
  std::span<const double> p() const { return p_; }
  double q(int i) const { return q_[i]; }
  double p(int i) const { return p_[i]; }
  double c() const { return c_; }
  double kappa() const { return c_ / n(); }
  double min_gap() const { return min_gap_; }

  /// Throws SingularConfigurationError naming the closest pair when two
  /// positions are closer than min_gap.
  void require_distinct() const;
  /// Smallest |q_i - q_j| over i != j.
  double smallest_gap() const;

  PhasePoint with_coordinates(std::vector<double> q, std::vector<double> p) const;

private:
  std::vector<double> q_;
  std::vector<double> p_;
  double c_;
  double min_gap_;
};

/// Seeded random phase point: q sorted uniform on [-1, 1] conditioned on
/// consecutive gaps >= min(10/N^2, 1/(N-1)), p standard normal.
PhasePoint random_phase_point(int n, double c, std::mt19937_64 &rng);

/// Gap enforced by random_phase_point.
double random_point_gap(int n);

}  // namespace fuzcal
