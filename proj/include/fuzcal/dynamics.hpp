#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fuzcal/errors.hpp"
#include "fuzcal/linalg.hpp"
#include "fuzcal/phase_point.hpp"

namespace fuzcal {

// Time evolution uses the canonical bracket {q_i, p_j} = delta_ij with
// H = (1/2) sum p_i^2 + (1/2) sum_{i != j} kappa^2 / (q_i - q_j)^2.

double hamiltonian(const PhasePoint &pt);
/// (1/2) tr L^2, the same number computed through the Lax matrix.
double hamiltonian_from_lax(const PhasePoint &pt);

struct PhaseVelocity {
  std::vector<double> dq;  // p_i
  std::vector<double> dp;  // 2 kappa^2 sum_{k != i} (q_i - q_k)^-3
};

PhaseVelocity equations_of_motion(const PhasePoint &pt);

/// M_jj = i kappa sum_{l != j} (q_j - q_l)^-2, M_jk = -i kappa (q_j - q_k)^-2.
FuzzyMatrix build_lax_partner(const PhasePoint &pt);

/// Max-entry distance between dL/dt (chain rule along the flow) and [L, M].
Residual lax_equation_residual(const PhasePoint &pt);

enum class Method { rk4, rk4_adaptive };

Method parse_method(const std::string &name);
std::string method_name(Method m);

struct IntegrationOptions {
  double t_end = 10.0;
  /// Fixed step for rk4, initial step for rk4_adaptive.
  double dt = 1e-3;
  Method method = Method::rk4;
  /// Local error tolerance (relative and absolute) of the adaptive scheme.
  double tolerance = 1e-10;
  double min_step = 1e-13;
  /// Integration stops when two particles come closer than this.
  double gap = kDefaultMinGap;
  /// Powers k recorded as tr L^k at every step.
  std::vector<int> trace_powers{2, 3, 4};
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  std::vector<double> energy;
  std::vector<int> trace_powers;
  /// invariants[s][i] = tr L^{trace_powers[i]} at state s
  std::vector<std::vector<double>> invariants;
  /// ascending spectrum of L at each state
  std::vector<std::vector<double>> eigenvalues;

  int n() const { return states.empty() ? 0 : states.front().n(); }
  std::size_t size() const { return times.size(); }
};

/// Integration stopped because a pair came closer than the configured gap.
class NearCollisionError : public NumericalError {
public:
  NearCollisionError(const std::string &what, PhasePoint last_good, double time)
      : NumericalError(what), last_good_(std::move(last_good)), time_(time) {}
  const PhasePoint &last_good() const { return last_good_; }
  double time() const { return time_; }

private:
  PhasePoint last_good_;
  double time_;
};

/// Adaptive step fell below IntegrationOptions::min_step.
class StiffnessError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

Trajectory integrate(const PhasePoint &start, const IntegrationOptions &opts);

struct ConservationReport {
  std::vector<int> trace_powers;
  /// max_t |tr L^k(t) - tr L^k(0)| / sum_j |lambda_j(0)|^k
  std::vector<double> trace_drift;
  /// max_t max_j |lambda_j(t) - lambda_j(0)| / max_j |lambda_j(0)|
  double spectrum_drift = 0.0;
  /// max_t |H(t) - H(0)| / |H(0)|
  double energy_drift = 0.0;

  double max_trace_drift() const;
};

ConservationReport conservation_report(const Trajectory &traj);

/// Columns t, q_1..q_n, p_1..p_n, H, trL<k>..., eig_1..eig_n.
void write_trajectory_csv(std::ostream &os, const Trajectory &traj);

}  // namespace fuzcal
