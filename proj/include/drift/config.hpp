#ifndef DRIFT_CONFIG_HPP
#define DRIFT_CONFIG_HPP

#include <optional>
#include <string>

namespace drift {

/// Run parameters.  Precedence is command line > config file > defaults.
struct RunConfig {
  double mu = 7.5e-8;
  double omega_i = 0.884998;
  double omega_f = 0.885002;
  double eps = 1e-8;           // outer gradient tolerance
  double bvp_tol = 1e-11;      // inner step/residual tolerance
  double h_max = 0.01;
  double alpha = 0.5;
  int max_steps = 2000;
  std::optional<int> n_override;
  std::string trajectory_path;  // empty: skip writing
  std::string report_path;
  int threads = 0;             // 0: machine default, 1: serial reference
  bool deterministic = false;  // zero wall-clock fields in the report
};

/// Parses a key = value file ('#' comments, blank lines allowed) into an
/// existing config.  Unknown keys or malformed values throw
/// std::invalid_argument.
void apply_config_file(RunConfig& config, const std::string& path);

/// Validates the constraint set; returns a human-readable complaint
/// naming the violated hypothesis, or nothing when the config is sound.
std::optional<std::string> validate(const RunConfig& config);

}  // namespace drift

#endif
