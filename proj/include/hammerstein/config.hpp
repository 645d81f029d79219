#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hammerstein {

/// One batch run: problem selection, resolution and tolerance knobs, and
/// the output directory.
struct RunSpec {
  std::string problem;
  int n_nodes = 400;
  int nodes_per_A_interval = 64;
  double tol_spectral = 1e-10;
  double tol_solve = 1e-8;
  int max_iter = 10000;
  double damping = 1.0;
  std::uint64_t seed = 42;
  std::string weight_choice;  // catalog default when empty
  std::string output_dir = ".";
  double map_scale = 1.0;
  double u0_amplitude = 1.0;
  // inline parameterization of the catalog kernels
  double amplitude = 1.0;
  double decay = 0.5;
  std::optional<double> window_lo;
  std::optional<double> window_hi;
};

namespace detail {

inline double parse_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw std::invalid_argument("config: malformed value '" + v + "' for key '" + key + "'");
  return x;
}

inline long long parse_int(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw std::invalid_argument("config: malformed value '" + v + "' for key '" + key + "'");
  return x;
}

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  const auto b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
}

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

/// Parses the line-based `key = value` run configuration; '#' starts a
/// comment, unknown keys are errors, the problem id is required.
inline RunSpec parse_config(const std::string& text) {
  RunSpec spec;
  bool have_problem = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not a key = value pair");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::invalid_argument("config: empty key or value on line " + std::to_string(lineno));

    if (key == "problem") {
      spec.problem = val;
      have_problem = true;
    } else if (key == "n_nodes") {
      spec.n_nodes = static_cast<int>(detail::parse_int(key, val));
    } else if (key == "nodes_per_A_interval") {
      spec.nodes_per_A_interval = static_cast<int>(detail::parse_int(key, val));
    } else if (key == "tol_spectral") {
      spec.tol_spectral = detail::parse_double(key, val);
    } else if (key == "tol_solve") {
      spec.tol_solve = detail::parse_double(key, val);
    } else if (key == "max_iter") {
      spec.max_iter = static_cast<int>(detail::parse_int(key, val));
    } else if (key == "damping") {
      spec.damping = detail::parse_double(key, val);
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(detail::parse_int(key, val));
    } else if (key == "weight_choice") {
      spec.weight_choice = val;
    } else if (key == "output_dir") {
      spec.output_dir = val;
    } else if (key == "map_scale") {
      spec.map_scale = detail::parse_double(key, val);
    } else if (key == "u0_amplitude") {
      spec.u0_amplitude = detail::parse_double(key, val);
    } else if (key == "amplitude") {
      spec.amplitude = detail::parse_double(key, val);
    } else if (key == "decay") {
      spec.decay = detail::parse_double(key, val);
    } else if (key == "window_lo") {
      spec.window_lo = detail::parse_double(key, val);
    } else if (key == "window_hi") {
      spec.window_hi = detail::parse_double(key, val);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "' on line " +
                                  std::to_string(lineno));
    }
  }
  if (!have_problem) throw std::invalid_argument("config: missing required key 'problem'");
  if (spec.n_nodes < 8) throw std::invalid_argument("config: n_nodes must be >= 8");
  if (spec.nodes_per_A_interval < 4)
    throw std::invalid_argument("config: nodes_per_A_interval must be >= 4");
  if (!(spec.tol_spectral > 0.0) || !(spec.tol_solve > 0.0))
    throw std::invalid_argument("config: tolerances must be positive");
  if (!(spec.damping > 0.0) || spec.damping > 1.0)
    throw std::invalid_argument("config: damping must lie in (0,1]");
  if (spec.max_iter < 1) throw std::invalid_argument("config: max_iter must be >= 1");
  return spec;
}

/// Serializes a RunSpec back to the config format; parse_config of the
/// result reproduces the spec exactly. The output directory is omitted.
inline std::string to_config(const RunSpec& spec) {
  std::ostringstream os;
  os << "problem = " << spec.problem << "\n";
  if (!spec.weight_choice.empty()) os << "weight_choice = " << spec.weight_choice << "\n";
  os << "n_nodes = " << spec.n_nodes << "\n";
  os << "nodes_per_A_interval = " << spec.nodes_per_A_interval << "\n";
  os << "tol_spectral = " << detail::fmt17(spec.tol_spectral) << "\n";
  os << "tol_solve = " << detail::fmt17(spec.tol_solve) << "\n";
  os << "max_iter = " << spec.max_iter << "\n";
  os << "damping = " << detail::fmt17(spec.damping) << "\n";
  os << "seed = " << spec.seed << "\n";
  os << "map_scale = " << detail::fmt17(spec.map_scale) << "\n";
  os << "u0_amplitude = " << detail::fmt17(spec.u0_amplitude) << "\n";
  os << "amplitude = " << detail::fmt17(spec.amplitude) << "\n";
  os << "decay = " << detail::fmt17(spec.decay) << "\n";
  if (spec.window_lo) os << "window_lo = " << detail::fmt17(*spec.window_lo) << "\n";
  if (spec.window_hi) os << "window_hi = " << detail::fmt17(*spec.window_hi) << "\n";
  return os.str();
}

}  // namespace hammerstein
