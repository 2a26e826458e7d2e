#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <ostream>
#include <random>
#include <sstream>

#include "fuzcal/calogero.hpp"
#include "fuzcal/cli.hpp"
#include "fuzcal/continuum.hpp"
#include "fuzcal/dynamics.hpp"
#include "fuzcal/expression.hpp"
#include "fuzcal/format.hpp"
#include "fuzcal/fuzzy_sphere.hpp"

namespace fuzcal::cli {

namespace {

using Tolerances = std::map<std::string, double>;

// Defaults merged with overrides; names the command does not use are rejected.
Tolerances resolve_tolerances(const RunConfig &cfg, Tolerances defaults) {
  for (const auto &[name, value] : cfg.tolerances) {
    auto it = defaults.find(name);
    if (it == defaults.end()) {
      std::string known;
      for (const auto &[k, v] : defaults) known += (known.empty() ? "" : ", ") + k;
      throw ConfigError("unknown tolerance '" + name + "' for " + cfg.command + " (known: " + known + ")");
    }
    if (!(value > 0.0)) throw ConfigError("tolerance '" + name + "' must be positive");
    it->second = value;
  }
  return defaults;
}

Json header(const RunConfig &cfg) {
  Json j;
  j["tool"] = "fuzcal";
  j["version"] = version();
  j["command"] = cfg.command;
  j["seed"] = cfg.seed;
  j["config"] = cfg.to_json();
  return j;
}

std::string csv_preamble(const RunConfig &cfg) {
  return "# fuzcal " + version() + " " + cfg.command + " seed=" + std::to_string(cfg.seed) + "\n";
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
  if (!f) throw ConfigError("failed writing '" + path + "'");
}

// json format: the report goes to --out (or stdout). csv format: the table
// goes there and, when --out names a file, the report lands next to it.
void emit(const RunConfig &cfg, std::ostream &out, const Json &report, const std::string &csv) {
  const std::string text = cfg.effective_format() == "json" ? dump_json(report) : csv;
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  write_file(cfg.out, text);
  if (cfg.effective_format() == "csv") write_file(cfg.out + ".json", dump_json(report));
}

std::mt19937_64 size_rng(std::uint64_t seed, int n) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n)};
  return std::mt19937_64(seq);
}

void require_sizes(const RunConfig &cfg, std::size_t at_least) {
  if (cfg.sizes.size() < at_least) {
    throw ConfigError(cfg.command + " needs at least " + std::to_string(at_least) + " sizes");
  }
  for (int n : cfg.sizes) {
    if (n < 2) throw ConfigError("sizes must be >= 2, got " + std::to_string(n));
  }
}

FieldConfig field_from(const RunConfig &cfg, const std::string &fallback) {
  const std::string spec = cfg.profile.empty() ? fallback : cfg.profile;
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) return field_preset(spec, cfg.coupling());
  return field_preset(spec.substr(0, colon), cfg.coupling(), spec.substr(colon + 1));
}

struct Check {
  std::string name;
  int n = 0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return residual <= tolerance; }  // NaN fails
};

const std::vector<std::string> kVerifyChecks{
    "fuzzy-sphere-relation", "vortex-factorization", "pairing-full-delta", "pairing-diagonal-delta",
    "commutator-identity",   "fundamental-relation", "r-slot1",            "r-slot2",
    "r-rewrite",             "involutivity",         "lax-equation",       "hamiltonian",
    "partials"};

std::vector<Check> verify_size(int n, const RunConfig &cfg, const Tolerances &tol) {
  std::vector<Check> out;
  auto add = [&](const std::string &name, double r) { out.push_back({name, n, r, tol.at(name)}); };
  add("fuzzy-sphere-relation", fuzzy_sphere_relation_residual(n));
  add("vortex-factorization", vortex_factorization_residual(n));
  const SphereFunction profile = parse_sphere_function("sigma-profile:cubic");
  const SphereFunction poly = parse_sphere_function("x1 + x2*x3 - 0.5*x3*x3");
  add("pairing-full-delta",
      std::max(full_delta_pairing_residual(profile, n), full_delta_pairing_residual(poly, n)));
  add("pairing-diagonal-delta", diagonal_delta_pairing_residual(profile, n));

  std::mt19937_64 rng = size_rng(cfg.seed, n);
  double comm = 0, fund = 0, s1 = 0, s2 = 0, rw = 0, inv = 0, lax = 0, ham = 0, part = 0;
  for (int i = 0; i < cfg.points; ++i) {
    const PhasePoint pt = random_phase_point(n, cfg.coupling(), rng);
    comm = std::max(comm, commutator_identity_residual(pt).relative());
    fund = std::max(fund, fundamental_relation_residual(pt).relative());
    const RCommutatorResiduals r = r_commutator_identities_residual(pt);
    s1 = std::max(s1, r.slot1.relative());
    s2 = std::max(s2, r.slot2.relative());
    rw = std::max({rw, r.slot1_rewrite, r.slot2_rewrite});
    for (int m = 1; m <= 6; ++m) {
      for (int k = m + 1; k <= 6; ++k) inv = std::max(inv, involutivity_residual(pt, m, k).relative());
    }
    lax = std::max(lax, lax_equation_residual(pt).relative());
    const double h = hamiltonian(pt);
    ham = std::max(ham, std::abs(h - hamiltonian_from_lax(pt)) / std::abs(h));
    if (i < 3) part = std::max(part, registered_partials_residual(pt));
  }
  add("commutator-identity", comm);
  add("fundamental-relation", fund);
  add("r-slot1", s1);
  add("r-slot2", s2);
  add("r-rewrite", rw);
  add("involutivity", inv);
  add("lax-equation", lax);
  add("hamiltonian", ham);
  add("partials", part);
  return out;
}

struct Experiment {
  std::string label;
  std::vector<ConvergenceRow> rows;
  std::optional<LogLogFit> fit;
  double lo = -1.35, hi = -0.65;
  std::string note;
  bool pass() const { return fit && fit->slope >= lo && fit->slope <= hi; }
};

std::pair<Polynomial, Polynomial> function_pair(const RunConfig &cfg, const std::string &fallback) {
  const std::string spec = cfg.function.empty() ? fallback : cfg.function;
  const std::size_t semi = spec.find(';');
  if (semi == std::string::npos) throw ConfigError("--function expects 'f;g' for correspondence sweeps");
  return {parse_polynomial(spec.substr(0, semi)), parse_polynomial(spec.substr(semi + 1))};
}

Experiment correspondence_sweep(const RunConfig &cfg, const std::string &which) {
  const auto [f, g] = function_pair(cfg, which == "trace-order" ? "x3*x3;x3*x3" : "x1;x2");
  std::vector<std::future<ConvergenceRow>> jobs;
  for (int n : cfg.sizes) {
    jobs.push_back(std::async(std::launch::async, [n, &f, &g, &which] {
      const CorrespondenceResiduals r = correspondence_residuals(f, g, n);
      const double v = which == "product-order" ? r.product
                       : which == "commutator-order" ? r.commutator
                                                     : r.trace;
      return ConvergenceRow{n, v};
    }));
  }
  Experiment e;
  e.label = which;
  for (auto &j : jobs) e.rows.push_back(j.get());
  if (which == "commutator-order") {
    e.lo = -2.5;
    e.hi = -1.5;
  }
  if (std::all_of(e.rows.begin(), e.rows.end(), [](const ConvergenceRow &r) { return r.residual > 0; })) {
    std::vector<double> x, y;
    for (const ConvergenceRow &r : e.rows) {
      x.push_back(r.n);
      y.push_back(r.residual);
    }
    e.fit = fit_log_log(x, y);
  } else {
    e.note = "residual vanishes at some size; no rate to fit";
  }
  return e;
}

Json matrix_json(const FuzzyMatrix &m) {
  Json rows = Json::array();
  for (int i = 0; i < m.n(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

int cmd_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  require_sizes(cfg, 1);
  const Tolerances tol = resolve_tolerances(
      cfg, {{"fuzzy-sphere-relation", 1e-12}, {"vortex-factorization", 1e-12}, {"pairing-full-delta", 1e-12},
            {"pairing-diagonal-delta", 1e-12}, {"commutator-identity", 1e-13}, {"fundamental-relation", 1e-11},
            {"r-slot1", 1e-12}, {"r-slot2", 1e-12}, {"r-rewrite", 1e-14}, {"involutivity", 1e-9},
            {"lax-equation", 1e-12}, {"hamiltonian", 1e-12}, {"partials", 1e-6}});
  for (int n : cfg.sizes) {
    if (n > kMaxTensorN) {
      throw ResourceError("verify: size " + std::to_string(n) + " exceeds the tensor guard " +
                          std::to_string(kMaxTensorN));
    }
  }
  std::vector<std::future<std::vector<Check>>> jobs;
  for (int n : cfg.sizes) {
    jobs.push_back(std::async(std::launch::async, [n, &cfg, &tol] { return verify_size(n, cfg, tol); }));
  }
  std::vector<Check> checks;
  for (auto &j : jobs) {
    auto part = j.get();
    checks.insert(checks.end(), part.begin(), part.end());
  }
  auto rank = [](const std::string &name) {
    return std::find(kVerifyChecks.begin(), kVerifyChecks.end(), name) - kVerifyChecks.begin();
  };
  std::stable_sort(checks.begin(), checks.end(), [&](const Check &a, const Check &b) {
    return std::pair(rank(a.name), a.n) < std::pair(rank(b.name), b.n);
  });

  Json report = header(cfg);
  Json list = Json::array();
  std::ostringstream csv;
  csv << csv_preamble(cfg) << "check,n,residual,tolerance,pass\n";
  int failed = 0;
  for (const Check &c : checks) {
    Json j;
    j["name"] = c.name;
    j["n"] = c.n;
    j["residual"] = c.residual;
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass();
    list.push_back(j);
    csv << c.name << ',' << c.n << ',' << format_double(c.residual) << ',' << format_double(c.tolerance)
        << ',' << (c.pass() ? "true" : "false") << '\n';
    if (!c.pass()) {
      ++failed;
      err << "FAIL " << c.name << " n=" << c.n << " residual " << c.residual << " > " << c.tolerance << '\n';
    }
  }
  report["checks"] = list;
  report["failed"] = failed;
  report["pass"] = failed == 0;
  emit(cfg, out, report, csv.str());
  err << "verify: " << checks.size() << " checks, " << failed << " failed\n";
  return failed == 0 ? kPass : kCheckFailed;
}

int cmd_converge(const RunConfig &cfg_in, std::ostream &out, std::ostream &err) {
  RunConfig cfg = cfg_in;
  const std::string exp = cfg.experiment.empty() ? "trace-power" : cfg.experiment;
  const bool correspondence = exp == "product-order" || exp == "commutator-order" || exp == "trace-order";
  if (exp != "trace-power" && exp != "fourier-band" && !correspondence) {
    throw ConfigError("unknown experiment '" + exp +
                      "' (trace-power, fourier-band, product-order, commutator-order, trace-order)");
  }
  resolve_tolerances(cfg, {});
  if (cfg.sizes.empty()) cfg.sizes = correspondence ? parse_sizes("16..256") : parse_sizes("32..512");
  require_sizes(cfg, 3);
  for (std::size_t i = 1; i < cfg.sizes.size(); ++i) {
    if (cfg.sizes[i] <= cfg.sizes[i - 1]) throw ConfigError("sizes must be strictly ascending");
  }

  std::vector<Experiment> exps;
  if (exp == "trace-power") {
    const FieldConfig field = field_from(cfg, "cubic");
    for (int m : cfg.m.empty() ? std::vector<int>{2} : cfg.m) {
      const ConvergenceTable t = trace_convergence(field, m, cfg.sizes);
      exps.push_back({"trace-power:m=" + std::to_string(m), t.rows, t.fit, -1.35, -0.65, {}});
    }
  } else if (exp == "fourier-band") {
    const FieldConfig field = field_from(cfg, "cubic");
    for (int k : cfg.band.empty() ? std::vector<int>{1} : cfg.band) {
      const ConvergenceTable t = offdiagonal_fourier_convergence(field, k, cfg.sizes);
      exps.push_back({"fourier-band:k=" + std::to_string(k), t.rows, t.fit, -1.35, -0.65, {}});
    }
  } else {
    exps.push_back(correspondence_sweep(cfg, exp));
  }

  Json report = header(cfg);
  Json summary = Json::array();
  std::ostringstream csv;
  csv << csv_preamble(cfg) << "experiment,n,residual\n";
  int failed = 0;
  for (Experiment &e : exps) {
    if (!e.fit && e.note.empty()) e.note = "residual vanishes at some size; no rate to fit";
    Json rows = Json::array();
    for (const ConvergenceRow &r : e.rows) {
      csv << e.label << ',' << r.n << ',' << format_double(r.residual) << '\n';
      rows.push_back(Json{{"n", r.n}, {"residual", r.residual}});
    }
    Json s;
    s["experiment"] = e.label;
    s["fitted_slope"] = e.fit ? Json(e.fit->slope) : Json(nullptr);
    s["slope_window"] = Json::array({e.lo, e.hi});
    s["pass"] = e.pass();
    if (!e.note.empty()) s["note"] = e.note;
    s["rows"] = rows;
    summary.push_back(s);
    err << (e.pass() ? "PASS " : "FAIL ") << e.label << " slope "
        << (e.fit ? format_double(e.fit->slope) : std::string("n/a")) << " window [" << e.lo << ", " << e.hi
        << "]\n";
    if (!e.pass()) ++failed;
  }
  report["experiments"] = summary;
  report["pass"] = failed == 0;
  emit(cfg, out, report, csv.str());
  return failed == 0 ? kPass : kCheckFailed;
}

int cmd_dynamics(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  const Tolerances tol = resolve_tolerances(
      cfg, {{"drift", 1e-8}, {"oracle", 1e-6}, {"lax-equation", 1e-12}, {"integrator", 1e-10}});
  if (cfg.n < 2) throw ConfigError("dynamics needs n >= 2");
  if (cfg.oracle && cfg.n != 2) throw ConfigError("--oracle compares the two-body law; use --n 2");

  std::mt19937_64 rng = size_rng(cfg.seed, cfg.n);
  const PhasePoint start = cfg.profile.empty() ? random_phase_point(cfg.n, cfg.coupling(), rng)
                                               : sampled_phase_point(field_from(cfg, ""), cfg.n);
  IntegrationOptions opts;
  opts.t_end = cfg.t_end;
  opts.dt = cfg.dt;
  opts.method = parse_method(cfg.method);
  opts.tolerance = tol.at("integrator");
  if (!cfg.m.empty()) opts.trace_powers = cfg.m;
  const Trajectory traj = integrate(start, opts);
  const ConservationReport cons = conservation_report(traj);

  std::vector<Check> checks;
  for (std::size_t i = 0; i < cons.trace_powers.size(); ++i) {
    checks.push_back({"trace-drift:k=" + std::to_string(cons.trace_powers[i]), cfg.n, cons.trace_drift[i],
                      tol.at("drift")});
  }
  checks.push_back({"spectrum-drift", cfg.n, cons.spectrum_drift, tol.at("drift")});
  checks.push_back({"energy-drift", cfg.n, cons.energy_drift, tol.at("drift")});
  checks.push_back({"lax-equation", cfg.n,
                    std::max(lax_equation_residual(traj.states.front()).relative(),
                             lax_equation_residual(traj.states.back()).relative()),
                    tol.at("lax-equation")});
  if (cfg.oracle) {
    const PhasePoint &s0 = traj.states.front();
    const double r0 = s0.q(0) - s0.q(1), v0 = s0.p(0) - s0.p(1), kappa = s0.kappa();
    const double e = 0.25 * v0 * v0 + kappa * kappa / (r0 * r0);
    double worst = 0.0;
    for (std::size_t s = 0; s < traj.size(); ++s) {
      const double t = traj.times[s];
      const double r = traj.states[s].q(0) - traj.states[s].q(1);
      const double exact = r0 * r0 + 2 * r0 * v0 * t + 4 * e * t * t;
      worst = std::max(worst, std::abs(r * r - exact) / exact);
    }
    checks.push_back({"two-body-oracle", 2, worst, tol.at("oracle")});
  }

  Json report = header(cfg);
  report["steps"] = traj.size() - 1;
  report["t_final"] = traj.times.back();
  report["initial"] = Json{{"q", std::vector<double>(start.q().begin(), start.q().end())},
                           {"p", std::vector<double>(start.p().begin(), start.p().end())}};
  Json list = Json::array();
  int failed = 0;
  for (const Check &c : checks) {
    list.push_back(Json{{"name", c.name}, {"n", c.n}, {"residual", c.residual}, {"tolerance", c.tolerance},
                        {"pass", c.pass()}});
    if (!c.pass()) {
      ++failed;
      err << "FAIL " << c.name << " " << c.residual << " > " << c.tolerance << '\n';
    }
  }
  report["checks"] = list;
  report["pass"] = failed == 0;
  std::ostringstream csv;
  csv << csv_preamble(cfg);
  write_trajectory_csv(csv, traj);
  emit(cfg, out, report, csv.str());
  err << "dynamics: " << traj.size() - 1 << " steps, " << failed << " failed checks\n";
  return failed == 0 ? kPass : kCheckFailed;
}

int cmd_quantize(const RunConfig &cfg, std::ostream &out, std::ostream &) {
  resolve_tolerances(cfg, {});
  if (cfg.function.empty()) throw ConfigError("quantize needs --function");
  if (cfg.n < 2) throw ConfigError("quantize needs n >= 2");
  const FuzzyMatrix q = quantize(parse_sphere_function(cfg.function), cfg.n);
  Json report = header(cfg);
  report["n"] = cfg.n;
  report["function"] = cfg.function;
  report["norm"] = fuzzy_norm(q);
  report["entries"] = matrix_json(q);
  std::ostringstream csv;
  csv << csv_preamble(cfg) << "row,col,re,im\n";
  for (int i = 0; i < q.n(); ++i) {
    for (int j = 0; j < q.n(); ++j) {
      csv << i << ',' << j << ',' << format_double(q(i, j).real()) << ',' << format_double(q(i, j).imag()) << '\n';
    }
  }
  emit(cfg, out, report, csv.str());
  return kPass;
}

}  // namespace fuzcal::cli
