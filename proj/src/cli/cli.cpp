#include "fuzcal/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fuzcal/dynamics.hpp"
#include "fuzcal/errors.hpp"

#ifndef FUZCAL_VERSION
#define FUZCAL_VERSION "0.0.0"
#endif

namespace fuzcal::cli {

std::string version() { return FUZCAL_VERSION; }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(v)) throw ConfigError(std::string(key) + " must be finite");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("invalid boolean '" + std::string(text) + "' for " + std::string(key));
}

}  // namespace

double RunConfig::coupling() const {
  return a ? 2.0 * std::sqrt(3.0) * *a / std::numbers::pi : c;
}

std::string RunConfig::effective_format() const {
  if (!format.empty()) return format;
  return (command == "converge" || command == "dynamics") ? "csv" : "json";
}

Json RunConfig::to_json() const {
  Json j;
  j["command"] = command;
  j["sizes"] = sizes;
  j["seed"] = seed;
  j["c"] = coupling();
  if (a) j["a"] = *a;
  j["profile"] = profile;
  j["m"] = m;
  j["band"] = band;
  j["t_end"] = t_end;
  j["dt"] = dt;
  j["format"] = effective_format();
  j["experiment"] = experiment;
  j["n"] = n;
  j["oracle"] = oracle;
  j["function"] = function;
  j["method"] = method;
  j["points"] = points;
  Json tol = Json::object();
  for (const auto &[k, v] : tolerances) tol[k] = v;
  j["tolerances"] = tol;
  return j;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  text = trim(text);
  if (text.empty()) throw ConfigError("empty integer list");
  while (true) {
    const std::size_t comma = text.find(',');
    out.push_back(parse_number<int>("list", text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<int> parse_sizes(std::string_view text) {
  text = trim(text);
  const std::size_t dots = text.find("..");
  if (dots == std::string_view::npos) return parse_int_list(text);
  const int lo = parse_number<int>("sizes", text.substr(0, dots));
  const int hi = parse_number<int>("sizes", text.substr(dots + 2));
  if (lo < 1 || hi < lo) throw ConfigError("sizes range must satisfy 1 <= A <= B");
  std::vector<int> out;
  for (long v = lo; v <= hi; v *= 2) out.push_back(static_cast<int>(v));
  return out;
}

void apply_setting(RunConfig &cfg, const std::string &key, const std::string &raw) {
  const std::string value(trim(raw));
  if (key == "sizes") {
    cfg.sizes = parse_sizes(value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "c") {
    cfg.c = parse_number<double>(key, value);
  } else if (key == "a") {
    cfg.a = parse_number<double>(key, value);
  } else if (key == "profile") {
    cfg.profile = value;
  } else if (key == "m") {
    cfg.m = parse_int_list(value);
  } else if (key == "band") {
    cfg.band = parse_int_list(value);
  } else if (key == "t-end") {
    cfg.t_end = parse_number<double>(key, value);
  } else if (key == "dt") {
    cfg.dt = parse_number<double>(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "format") {
    if (value != "csv" && value != "json") throw ConfigError("format must be csv or json");
    cfg.format = value;
  } else if (key == "experiment") {
    cfg.experiment = value;
  } else if (key == "n") {
    cfg.n = parse_number<int>(key, value);
  } else if (key == "oracle") {
    cfg.oracle = parse_bool(key, value);
  } else if (key == "function") {
    cfg.function = value;
  } else if (key == "method") {
    parse_method(value);
    cfg.method = value;
  } else if (key == "points") {
    cfg.points = parse_number<int>(key, value);
    if (cfg.points < 1) throw ConfigError("points must be >= 1");
  } else if (key.starts_with("tol.") && key.size() > 4) {
    cfg.tolerances[key.substr(4)] = parse_number<double>(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    out.emplace_back(std::string(trim(t.substr(0, eq))), std::string(trim(t.substr(eq + 1))));
  }
  return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Fuzzy-sphere and Calogero numerics laboratory", "fuzcal"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough();

  // every option is captured as text and applied through apply_setting so
  // the config file and the command line share one parser
  static const std::vector<std::pair<std::string, std::string>> kOptions{
      {"sizes", "Sizes: comma list or A..B (doubling)"},
      {"seed", "64-bit seed"},
      {"c", "Coupling c"},
      {"a", "Field coupling a (c = 2 sqrt(3) a / pi)"},
      {"profile", "Field preset NAME[:momentum]"},
      {"m", "Trace powers (comma list)"},
      {"band", "Off-diagonal bands (comma list)"},
      {"t-end", "Final time"},
      {"dt", "Time step (initial step when adaptive)"},
      {"out", "Output path"},
      {"format", "csv or json"},
      {"experiment", "Convergence experiment"},
      {"n", "Particle number / matrix size"},
      {"function", "Sphere function for quantize, or 'f;g' pair for correspondence sweeps"},
      {"method", "rk4 or rk4-adaptive"},
      {"points", "Random phase points per size"},
  };
  std::map<std::string, std::string> given;
  for (const auto &[name, help] : kOptions) {
    app.add_option("--" + name, given[name], help);
  }
  std::vector<std::string> tol_flags;
  app.add_option("--tol", tol_flags, "Tolerance override NAME=VALUE (repeatable)");
  bool oracle = false;
  auto *oracle_flag = app.add_flag("--oracle", oracle, "Compare n=2 dynamics with the analytic law");
  std::string config_path;
  app.add_option("--config", config_path, "Flat key=value config file (flags win)");

  const std::pair<const char *, const char *> commands[] = {
      {"verify", "Exact identities at random phase points"},
      {"converge", "Large-N convergence sweeps with log-log slope fits"},
      {"dynamics", "Integrate the Calogero flow and check conservation"},
      {"quantize", "Print the quantized matrix of a sphere function"},
  };
  for (const auto &[name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  std::vector<const char *> argv;
  for (const std::string &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? kPass : kConfigError;
  }

  RunConfig cfg;
  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) {
      for (const auto &[k, v] : read_config_file(config_path)) apply_setting(cfg, k, v);
    }
    for (const auto &[name, help] : kOptions) {
      if (app.count("--" + name) > 0) apply_setting(cfg, name, given[name]);
    }
    for (const std::string &t : tol_flags) {
      const std::size_t eq = t.find('=');
      if (eq == std::string::npos) throw ConfigError("--tol expects NAME=VALUE, got '" + t + "'");
      apply_setting(cfg, "tol." + t.substr(0, eq), t.substr(eq + 1));
    }
    if (oracle_flag->count() > 0) cfg.oracle = oracle;
  } catch (const ConfigError &e) {
    err << "fuzcal: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "converge") return cmd_converge(cfg, out, err);
    if (cfg.command == "dynamics") return cmd_dynamics(cfg, out, err);
    return cmd_quantize(cfg, out, err);
  } catch (const ConfigError &e) {
    err << "fuzcal: " << e.what() << '\n';
    return kConfigError;
  } catch (const NearCollisionError &e) {
    err << "fuzcal: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const NumericalError &e) {
    err << "fuzcal: " << e.what() << '\n';
    return kNumericalError;
  } catch (const ResourceError &e) {
    err << "fuzcal: " << e.what() << '\n';
    return kNumericalError;
  } catch (const Error &e) {
    // precondition, domain and dimension violations come from the request
    err << "fuzcal: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace fuzcal::cli
