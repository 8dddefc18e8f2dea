#include "drift/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "drift/chain.hpp"

namespace drift {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double parsed;
  try {
    parsed = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key);
  }
  if (pos != value.size())
    throw std::invalid_argument("config: trailing junk after value of " + key);
  return parsed;
}

int parse_int(const std::string& key, const std::string& value) {
  double d = parse_double(key, value);
  int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw std::invalid_argument("config: " + key + " must be an integer");
  return i;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("config: " + key + " must be a boolean");
}

}  // namespace

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: missing '=' on line " +
                                  std::to_string(lineno));
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key == "mu")
      config.mu = parse_double(key, value);
    else if (key == "omega_i")
      config.omega_i = parse_double(key, value);
    else if (key == "omega_f")
      config.omega_f = parse_double(key, value);
    else if (key == "eps")
      config.eps = parse_double(key, value);
    else if (key == "bvp_tol")
      config.bvp_tol = parse_double(key, value);
    else if (key == "h_max")
      config.h_max = parse_double(key, value);
    else if (key == "alpha")
      config.alpha = parse_double(key, value);
    else if (key == "max_steps")
      config.max_steps = parse_int(key, value);
    else if (key == "n_override")
      config.n_override = parse_int(key, value);
    else if (key == "trajectory")
      config.trajectory_path = value;
    else if (key == "report")
      config.report_path = value;
    else if (key == "threads")
      config.threads = parse_int(key, value);
    else if (key == "deterministic")
      config.deterministic = parse_bool(key, value);
    else
      throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

std::optional<std::string> validate(const RunConfig& config) {
  if (!(config.mu > 0.0) || config.mu > MethodConstants::mu_bar)
    return "mu must lie in (0, mu_bar]; the convexity argument needs "
           "mu <= " +
           std::to_string(MethodConstants::mu_bar);
  if (!(config.omega_i < config.omega_f))
    return "omega_i must be strictly below omega_f";
  if (!(config.eps > 0.0)) return "eps must be positive";
  if (!(config.bvp_tol > 0.0)) return "bvp_tol must be positive";
  if (!(config.h_max > 0.0) || config.h_max > MethodConstants::h_max)
    return "h_max must lie in (0, 0.01]; the eigenvalue bound of the "
           "frozen Jacobian needs h <= 0.01";
  if (!(config.alpha > 0.0) || config.alpha > MethodConstants::alpha_step)
    return "alpha must lie in (0, 1/2]; the accelerated scheme is "
           "certified for steps up to 1/2";
  if (config.max_steps < 1) return "max_steps must be at least 1";
  if (config.n_override && (*config.n_override < 6 || *config.n_override % 2))
    return "n_override must be an even transition count >= 6";
  if (config.threads < 0) return "threads must be >= 0";
  return std::nullopt;
}

}  // namespace drift
