#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzcal/report.hpp"

namespace fuzcal::cli {

enum ExitCode : int {
  kPass = 0,
  kConfigError = 1,
  kCheckFailed = 2,
  kNumericalError = 3,
};

struct RunConfig {
  std::string command;
  std::vector<int> sizes;
  std::uint64_t seed = 42;
  double c = 1.0;
  std::optional<double> a;  // when set, c = 2 sqrt(3) a / pi
  std::string profile;      // NAME[:momentum]
  std::vector<int> m;
  std::vector<int> band;
  double t_end = 10.0;
  double dt = 1e-3;
  std::string out;
  std::string format;       // empty: the command's default
  std::string experiment;
  int n = 8;
  bool oracle = false;
  std::string function;
  std::string method = "rk4-adaptive";
  int points = 10;
  std::map<std::string, double> tolerances;

  double coupling() const;
  std::string effective_format() const;
  Json to_json() const;
};

/// "2,4,8" or "A..B" (A, 2A, 4A, ... up to B).
std::vector<int> parse_sizes(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

/// Applies one key=value setting (keys are the long flag names without the
/// leading dashes; "tol.NAME" sets a tolerance). Unknown keys throw ConfigError.
void apply_setting(RunConfig &cfg, const std::string &key, const std::string &value);

/// Flat key=value file; blank lines and lines starting with '#' are ignored.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string &path);

/// Full command line (args[0] is the program name). Writes artifacts to
/// cfg.out or `out`, diagnostics to `err`, and returns an ExitCode.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

int cmd_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_converge(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_dynamics(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_quantize(const RunConfig &cfg, std::ostream &out, std::ostream &err);

std::string version();

}  // namespace fuzcal::cli
