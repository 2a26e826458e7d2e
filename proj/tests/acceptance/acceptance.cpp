// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fuzcal/calogero.hpp"
#include "fuzcal/continuum.hpp"
#include "fuzcal/dynamics.hpp"
#include "fuzcal/fuzzy_sphere.hpp"
#include "fuzcal/numerics.hpp"
#include "fuzcal/sphere.hpp"

using namespace fuzcal;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void run(int id, const char *title, std::optional<double> budget_s, const std::function<Outcome()> &body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception &e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  char timing[96];
  if (budget_s) {
    std::snprintf(timing, sizeof timing, "%.2f s (budget %.0f s)", secs, *budget_s);
    if (secs >= *budget_s) out.pass = false;
  } else {
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
  }
  if (!out.pass) ++failures;
  std::printf("%s [%2d] %s: %s; %s\n", out.pass ? "PASS" : "FAIL", id, title, out.detail.c_str(), timing);
  std::fflush(stdout);
}

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

std::vector<int> doubling(int lo, int hi) {
  std::vector<int> v;
  for (int n = lo; n <= hi; n *= 2) v.push_back(n);
  return v;
}

// Runs f(n) for every n concurrently and returns the largest result.
double max_over(const std::vector<int> &sizes, const std::function<double(int)> &f) {
  std::vector<std::future<double>> jobs;
  for (int n : sizes) jobs.push_back(std::async(std::launch::async, f, n));
  double worst = 0.0;
  for (auto &j : jobs) worst = std::max(worst, j.get());
  return worst;
}

template <class F>
double over_points(int n, int count, unsigned seed, F &&f) {
  std::mt19937_64 rng(seed * 1000003ULL + n);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) worst = std::max(worst, f(random_phase_point(n, 1.0, rng)));
  return worst;
}

bool in_window(const ConvergenceTable &t, double lo, double hi) {
  return t.fit && t.fit->slope >= lo && t.fit->slope <= hi;
}

std::string slope_text(const ConvergenceTable &t) {
  return t.fit ? fmt("%.3f", t.fit->slope) : std::string("none (zero residual)");
}

}  // namespace

int main() {
  run(1, "fuzzy sphere relation", 5.0, [] {
    const double worst = max_over(range(2, 256), fuzzy_sphere_relation_residual);
    return Outcome{worst <= 1e-12, fmt("max residual %.3g <= 1e-12 over N=2..256", worst)};
  });

  run(2, "commutator identity [R,L] = i kappa (K - 1)", 10.0, [] {
    const double worst = max_over(range(2, 128), [](int n) {
      return over_points(n, 100, 2, [](const PhasePoint &pt) { return commutator_identity_residual(pt).relative(); });
    });
    return Outcome{worst <= 1e-13, fmt("max relative residual %.3g <= 1e-13, 100 points per N=2..128", worst)};
  });

  run(3, "fundamental r-matrix relation", 120.0, [] {
    const double worst = max_over(range(2, 16), [](int n) {
      return over_points(n, 100, 3, [](const PhasePoint &pt) { return fundamental_relation_residual(pt).relative(); });
    });
    return Outcome{worst <= 1e-11, fmt("max relative residual %.3g <= 1e-11, 100 points per N=2..16", worst)};
  });

  run(4, "[R (x) 1, r] and [1 (x) R, r] identities", std::nullopt, [] {
    std::vector<std::future<RCommutatorResiduals>> jobs;
    for (int n : range(2, 32)) {
      for (int i = 0; i < 2; ++i) {
        jobs.push_back(std::async(std::launch::async, [n, i] {
          std::mt19937_64 rng(4000 + 100 * n + i);
          return r_commutator_identities_residual(random_phase_point(n, 1.0, rng));
        }));
      }
    }
    double slot = 0.0, rewrite = 0.0;
    for (auto &j : jobs) {
      const RCommutatorResiduals r = j.get();
      slot = std::max({slot, r.slot1.relative(), r.slot2.relative()});
      rewrite = std::max({rewrite, r.slot1_rewrite, r.slot2_rewrite});
    }
    // "exactly" is read as agreement to a few ulps of O(1) entries
    return Outcome{slot <= 1e-12 && rewrite <= 1e-14,
                   fmt("identities %.3g <= 1e-12, delta rewrites %.3g <= 1e-14, 2 points per N=2..32", slot, rewrite)};
  });

  run(5, "involutivity of tr L^m", 60.0, [] {
    const double worst = max_over(range(2, 32), [](int n) {
      return over_points(n, 20, 5, [](const PhasePoint &pt) {
        double w = 0.0;
        for (int m = 1; m <= 6; ++m) {
          for (int k = m + 1; k <= 6; ++k) w = std::max(w, involutivity_residual(pt, m, k).relative());
        }
        return w;
      });
    });
    return Outcome{worst <= 1e-9, fmt("max relative bracket %.3g <= 1e-9, 1<=m,k<=6, 20 points per N=2..32", worst)};
  });

  run(6, "Poisson-engine partials vs central differences", std::nullopt, [] {
    const double worst = max_over({2, 3, 5, 8, 16}, [](int n) {
      return over_points(n, 5, 6, [](const PhasePoint &pt) { return registered_partials_residual(pt); });
    });
    return Outcome{worst <= 1e-6, fmt("max relative deviation %.3g <= 1e-6 over registered observables", worst)};
  });

  run(7, "large-N trace convergence", 120.0, [] {
    Outcome out{true, ""};
    std::string slopes;
    for (const std::string &preset : {"linear", "cubic", "arcsin"}) {
      for (int m : {2, 3, 4}) {
        const ConvergenceTable t = trace_convergence(field_preset(preset, 1.0, "affine"), m, doubling(32, 512));
        out.pass = out.pass && in_window(t, -1.35, -0.65);
        slopes += fmt(" %s/m=%d:%s", preset.c_str(), m, slope_text(t).c_str());
      }
    }
    out.detail = "slopes in [-1.35,-0.65], N=32..512, affine momentum:" + slopes;
    return out;
  });

  run(8, "off-diagonal Fourier convergence", std::nullopt, [] {
    Outcome out{true, ""};
    std::string slopes;
    for (const std::string &preset : {"cubic", "arcsin"}) {
      for (int band : {1, 2, 3}) {
        const ConvergenceTable t = offdiagonal_fourier_convergence(field_preset(preset), band, doubling(32, 512));
        out.pass = out.pass && in_window(t, -1.35, -0.65);
        slopes += fmt(" %s/k=%d:%s", preset.c_str(), band, slope_text(t).c_str());
      }
    }
    out.detail = "slopes in [-1.35,-0.65], N=32..512:" + slopes;
    return out;
  });

  run(9, "correspondence orders on degree <= 2 polynomials", std::nullopt, [] {
    const Polynomial x1 = Polynomial::coordinate(0), x2 = Polynomial::coordinate(1),
                     x3 = Polynomial::coordinate(2);
    const std::vector<std::pair<Polynomial, Polynomial>> pairs{
        {x1, x2}, {x1, x3}, {x2, x1 * x3}, {x1 * x2, x3 * x3 + x1}};
    const std::vector<int> sizes = doubling(16, 256);
    Outcome out{true, ""};
    std::string slopes;
    const char *names[] = {"product", "commutator", "trace"};
    const double lo[] = {-1.35, -2.5, -1.35}, hi[] = {-0.65, -1.5, -0.65};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      std::vector<std::future<CorrespondenceResiduals>> jobs;
      for (int n : sizes) {
        jobs.push_back(std::async(std::launch::async, [&, n] {
          return correspondence_residuals(pairs[i].first, pairs[i].second, n);
        }));
      }
      ConvergenceTable tables[3];
      for (std::size_t s = 0; s < sizes.size(); ++s) {
        const CorrespondenceResiduals r = jobs[s].get();
        tables[0].rows.push_back({sizes[s], r.product});
        tables[1].rows.push_back({sizes[s], r.commutator});
        tables[2].rows.push_back({sizes[s], r.trace});
      }
      slopes += fmt(" pair%zu", i + 1);
      for (int k = 0; k < 3; ++k) {
        std::vector<double> x, y;
        for (const ConvergenceRow &row : tables[k].rows) {
          x.push_back(row.n);
          y.push_back(row.residual);
        }
        if (std::all_of(y.begin(), y.end(), [](double v) { return v > 0; })) tables[k].fit = fit_log_log(x, y);
        out.pass = out.pass && in_window(tables[k], lo[k], hi[k]);
        slopes += fmt(" %s:%s", names[k], slope_text(tables[k]).c_str());
      }
    }
    out.detail = "product/trace in [-1.35,-0.65], commutator in [-2.5,-1.5], N=16..256:" + slopes;
    return out;
  });

  run(10, "coupling match c = 2 sqrt(3) a / pi", std::nullopt, [] {
    double worst = 0.0;
    for (const std::string &preset : field_preset_names()) {
      for (const std::string &mom : momentum_profile_names()) {
        for (double a : {0.5, 1.0, 2.3}) {
          FieldConfig cfg = field_preset(preset, 1.0, mom);
          worst = std::max(worst, energy_coupling_residual(cfg, a));
        }
      }
    }
    return Outcome{worst <= 1e-9, fmt("max relative gap %.3g <= 1e-9 over all presets and momentum profiles", worst)};
  });

  run(11, "Calogero dynamics", std::nullopt, [] {
    IntegrationOptions opts;
    opts.t_end = 10.0;
    opts.method = Method::rk4_adaptive;
    opts.tolerance = 1e-10;

    std::mt19937_64 rng(11);
    double oracle = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const Trajectory traj = integrate(random_phase_point(2, 1.0, rng), opts);
      const PhasePoint &s0 = traj.states.front();
      const double r0 = s0.q(0) - s0.q(1), v0 = s0.p(0) - s0.p(1), kappa = s0.kappa();
      const double e = 0.25 * v0 * v0 + kappa * kappa / (r0 * r0);
      for (std::size_t s = 0; s < traj.size(); ++s) {
        const double t = traj.times[s];
        const double r = traj.states[s].q(0) - traj.states[s].q(1);
        const double exact = r0 * r0 + 2 * r0 * v0 * t + 4 * e * t * t;
        oracle = std::max(oracle, std::abs(r * r - exact) / exact);
      }
    }

    double drift = 0.0, lax = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const Trajectory traj = integrate(random_phase_point(8, 1.0, rng), opts);
      const ConservationReport cons = conservation_report(traj);
      drift = std::max({drift, cons.max_trace_drift(), cons.spectrum_drift});
      for (std::size_t s = 0; s < traj.size(); s += std::max<std::size_t>(1, traj.size() / 10)) {
        lax = std::max(lax, lax_equation_residual(traj.states[s]).relative());
      }
    }
    return Outcome{oracle <= 1e-6 && drift <= 1e-8 && lax <= 1e-12,
                   fmt("two-body r^2 %.3g <= 1e-6; N=8 tr L^{2,3,4}/spectrum drift %.3g <= 1e-8; "
                       "Lax equation %.3g <= 1e-12",
                       oracle, drift, lax)};
  });

  run(12, "reduced r kernel as a distribution", std::nullopt, [] {
    double deriv = 0.0, jump = 0.0;
    for (const std::string &preset : field_preset_names()) {
      const RDistributionReport r = r_distribution_checks(field_preset(preset));
      deriv = std::max({deriv, r.derivative_phi1, r.derivative_phi2});
      jump = std::max({jump, r.jump_diagonal, r.jump_origin});
    }
    return Outcome{deriv <= 1e-6 && jump <= 1e-6,
                   fmt("derivative residual %.3g <= 1e-6, jump deviation %.3g <= 1e-6, all presets", deriv, jump)};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
