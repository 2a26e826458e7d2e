#include "fuzcal/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fuzcal/calogero.hpp"
#include "fuzcal/format.hpp"

namespace fuzcal {

namespace {

using State = std::vector<double>;  // q_1..q_n, p_1..p_n

State pack(const PhasePoint &pt) {
  State y(pt.q().begin(), pt.q().end());
  y.insert(y.end(), pt.p().begin(), pt.p().end());
  return y;
}

PhasePoint unpack(const PhasePoint &like, const State &y) {
  const std::size_t n = like.n();
  return like.with_coordinates(State(y.begin(), y.begin() + n), State(y.begin() + n, y.end()));
}

State velocity(int n, double kappa, const State &y) {
  State f(2 * n, 0.0);
  const double k2 = 2.0 * kappa * kappa;
  for (int i = 0; i < n; ++i) {
    f[i] = y[n + i];
    double force = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      const double d = y[i] - y[k];
      force += 1.0 / (d * d * d);
    }
    f[n + i] = k2 * force;
  }
  return f;
}

State axpy(const State &y, double h, const State &k) {
  State out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
  return out;
}

State rk4_step(int n, double kappa, const State &y, double h) {
  const State k1 = velocity(n, kappa, y);
  const State k2 = velocity(n, kappa, axpy(y, h / 2, k1));
  const State k3 = velocity(n, kappa, axpy(y, h / 2, k2));
  const State k4 = velocity(n, kappa, axpy(y, h, k3));
  State out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = y[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return out;
}

// Smallest neighbour gap along a fixed particle ordering. One-dimensional
// repulsive dynamics never reorders particles, so a negative value means
// two of them passed through each other within a step. NaN propagates.
double ordered_gap(const std::vector<int> &order, const State &y) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < order.size(); ++i) {
    const double d = y[order[i]] - y[order[i - 1]];
    if (!(d >= g)) g = d;
  }
  return g;
}

std::vector<int> position_order(int n, const State &y) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return y[a] < y[b]; });
  return order;
}

std::vector<double> spectrum(const FuzzyMatrix &l) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(l.matrix(), Eigen::EigenvaluesOnly);
  return {es.eigenvalues().begin(), es.eigenvalues().end()};
}

void record(Trajectory &traj, double t, const PhasePoint &pt) {
  const FuzzyMatrix l = build_lax(pt);
  traj.times.push_back(t);
  traj.states.push_back(pt);
  traj.energy.push_back(hamiltonian(pt));
  const std::vector<double> eig = spectrum(l);
  std::vector<double> inv;
  for (int k : traj.trace_powers) {
    double s = 0.0;
    for (double lambda : eig) s += std::pow(lambda, k);
    inv.push_back(s);
  }
  traj.invariants.push_back(std::move(inv));
  traj.eigenvalues.push_back(eig);
}

}  // namespace

double hamiltonian(const PhasePoint &pt) {
  pt.require_distinct();
  const int n = pt.n();
  const double k2 = pt.kappa() * pt.kappa();
  double kinetic = 0.0, potential = 0.0;
  for (int i = 0; i < n; ++i) {
    kinetic += 0.5 * pt.p(i) * pt.p(i);
    for (int j = i + 1; j < n; ++j) {
      const double d = pt.q(i) - pt.q(j);
      potential += k2 / (d * d);
    }
  }
  return kinetic + potential;
}

double hamiltonian_from_lax(const PhasePoint &pt) {
  const FuzzyMatrix l = build_lax(pt);
  return 0.5 * (l * l).trace().real();
}

PhaseVelocity equations_of_motion(const PhasePoint &pt) {
  pt.require_distinct();
  const int n = pt.n();
  const State f = velocity(n, pt.kappa(), pack(pt));
  return {State(f.begin(), f.begin() + n), State(f.begin() + n, f.end())};
}

FuzzyMatrix build_lax_partner(const PhasePoint &pt) {
  pt.require_distinct();
  const int n = pt.n();
  const double kappa = pt.kappa();
  Matrix m = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double diag = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = pt.q(j) - pt.q(k);
      diag += 1.0 / (d * d);
      m(j, k) = Complex(0.0, -kappa / (d * d));
    }
    m(j, j) = Complex(0.0, kappa * diag);
  }
  return FuzzyMatrix(std::move(m));
}

Residual lax_equation_residual(const PhasePoint &pt) {
  const int n = pt.n();
  const PhaseVelocity v = equations_of_motion(pt);
  const double kappa = pt.kappa();
  Matrix dl = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    dl(j, j) = v.dp[j];
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = pt.q(j) - pt.q(k);
      dl(j, k) = Complex(0.0, -kappa * (v.dq[j] - v.dq[k]) / (d * d));
    }
  }
  const FuzzyMatrix l = build_lax(pt);
  const FuzzyMatrix m = build_lax_partner(pt);
  return compare(dl, commutator(l, m).matrix(), max_entry_norm(l) * max_entry_norm(m));
}

Method parse_method(const std::string &name) {
  if (name == "rk4") return Method::rk4;
  if (name == "rk4-adaptive") return Method::rk4_adaptive;
  throw ConfigError("unknown integration method '" + name + "' (expected rk4 or rk4-adaptive)");
}

std::string method_name(Method m) { return m == Method::rk4 ? "rk4" : "rk4-adaptive"; }

Trajectory integrate(const PhasePoint &start, const IntegrationOptions &opts) {
  if (!(opts.dt > 0.0) || !std::isfinite(opts.dt)) throw DomainError("integrate: dt must be positive");
  if (!(opts.t_end >= 0.0) || !std::isfinite(opts.t_end)) {
    throw DomainError("integrate: t_end must be finite and non-negative");
  }
  if (opts.method == Method::rk4_adaptive && !(opts.tolerance > 0.0)) {
    throw DomainError("integrate: tolerance must be positive");
  }
  for (int k : opts.trace_powers) {
    if (k < 1) throw DomainError("integrate: trace powers must be >= 1");
  }
  const int n = start.n();
  const double kappa = start.kappa();
  const std::vector<int> order = position_order(n, pack(start));
  if (!(ordered_gap(order, pack(start)) >= opts.gap)) {
    throw SingularConfigurationError("integrate: initial positions closer than the gap guard", 0, 0);
  }

  Trajectory traj;
  traj.trace_powers = opts.trace_powers;
  State y = pack(start);
  double t = 0.0;
  record(traj, t, start);

  auto accept = [&](State next, double t_next) {
    // without interaction particles may pass each other; only the sorted gap matters
    const double gap = kappa == 0.0 ? ordered_gap(position_order(n, next), next) : ordered_gap(order, next);
    if (!(gap >= opts.gap)) {
      std::ostringstream os;
      os << "near collision at t = " << t_next << ": neighbour gap " << gap << " below " << opts.gap;
      throw NearCollisionError(os.str(), unpack(start, y), t);
    }
    y = std::move(next);
    t = t_next;
    record(traj, t, unpack(start, y));
  };

  if (opts.method == Method::rk4) {
    const long steps = static_cast<long>(std::ceil(opts.t_end / opts.dt - 1e-12));
    for (long s = 1; s <= steps; ++s) {
      const double t_next = std::min(opts.t_end, s * opts.dt);
      accept(rk4_step(n, kappa, y, t_next - t), t_next);
    }
    return traj;
  }

  // step doubling with local extrapolation
  double h = std::min(opts.dt, opts.t_end);
  while (t < opts.t_end) {
    const bool last = t + h >= opts.t_end;
    const double step = last ? opts.t_end - t : h;
    const State full = rk4_step(n, kappa, y, step);
    const State half = rk4_step(n, kappa, rk4_step(n, kappa, y, step / 2), step / 2);
    double err = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double scale = opts.tolerance * (1.0 + std::abs(half[i]));
      err = std::max(err, std::abs(half[i] - full[i]) / 15.0 / scale);
    }
    if (!std::isfinite(err)) err = 1e10;
    const double factor = err == 0.0 ? 4.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 4.0);
    if (err <= 1.0) {
      State next(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) next[i] = half[i] + (half[i] - full[i]) / 15.0;
      accept(std::move(next), last ? opts.t_end : t + step);
      if (!last) h = step * factor;
    } else {
      h = step * factor;
    }
    if (t < opts.t_end && h < opts.min_step) {
      std::ostringstream os;
      os << "adaptive step " << h << " fell below " << opts.min_step << " at t = " << t;
      throw StiffnessError(os.str());
    }
  }
  return traj;
}

double ConservationReport::max_trace_drift() const {
  double m = 0.0;
  for (double d : trace_drift) m = std::max(m, d);
  return m;
}

ConservationReport conservation_report(const Trajectory &traj) {
  if (traj.size() == 0) throw PreconditionError("conservation_report: empty trajectory");
  ConservationReport rep;
  rep.trace_powers = traj.trace_powers;
  const std::vector<double> &eig0 = traj.eigenvalues.front();
  double eig_scale = 0.0;
  for (double v : eig0) eig_scale = std::max(eig_scale, std::abs(v));
  if (eig_scale == 0.0) eig_scale = 1.0;
  for (std::size_t i = 0; i < traj.trace_powers.size(); ++i) {
    double scale = 0.0;
    for (double v : eig0) scale += std::pow(std::abs(v), traj.trace_powers[i]);
    if (scale == 0.0) scale = 1.0;
    double drift = 0.0;
    for (const auto &inv : traj.invariants) {
      drift = std::max(drift, std::abs(inv[i] - traj.invariants.front()[i]));
    }
    rep.trace_drift.push_back(drift / scale);
  }
  const double h0 = traj.energy.front();
  for (std::size_t s = 0; s < traj.size(); ++s) {
    for (std::size_t j = 0; j < eig0.size(); ++j) {
      rep.spectrum_drift =
          std::max(rep.spectrum_drift, std::abs(traj.eigenvalues[s][j] - eig0[j]) / eig_scale);
    }
    const double dh = std::abs(traj.energy[s] - h0);
    rep.energy_drift = std::max(rep.energy_drift, h0 == 0.0 ? dh : dh / std::abs(h0));
  }
  return rep;
}

void write_trajectory_csv(std::ostream &os, const Trajectory &traj) {
  const int n = traj.n();
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",q_" << i;
  for (int i = 1; i <= n; ++i) os << ",p_" << i;
  os << ",H";
  for (int k : traj.trace_powers) os << ",trL" << k;
  for (int i = 1; i <= n; ++i) os << ",eig_" << i;
  os << '\n';
  for (std::size_t s = 0; s < traj.size(); ++s) {
    os << format_double(traj.times[s]);
    for (double v : traj.states[s].q()) os << ',' << format_double(v);
    for (double v : traj.states[s].p()) os << ',' << format_double(v);
    os << ',' << format_double(traj.energy[s]);
    for (double v : traj.invariants[s]) os << ',' << format_double(v);
    for (double v : traj.eigenvalues[s]) os << ',' << format_double(v);
    os << '\n';
  }
}

}  // namespace fuzcal
