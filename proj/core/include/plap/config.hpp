#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "plap/continuation.hpp"

namespace plap {

/// Parse failure with the 1-based source line, already spelled out in
/// what().
struct ConfigError : std::runtime_error {
  int line;
  ConfigError(int line_, const std::string& what_)
      : std::runtime_error("config: line " + std::to_string(line_) + ": " +
                           what_),
        line(line_) {}
};

/// Everything the command layer needs for one run. Defaults describe the
/// reference problem used throughout the docs; see default_config_text().
struct RunConfig {
  ProblemParams problem;
  ScanOptions scan;
  ContinuationOptions continuation;
  double continue_tol_rel = 1e-6;
  std::vector<double> sweep_lambdas{0.01, 0.02, 0.05, 0.1, 0.2, 0.5};
  std::vector<double> mu_values{0.0, 1.0, 10.0, 100.0, 1000.0, 10000.0};
  std::vector<double> blowup_amplitudes{10.0, 100.0, 1000.0};
  bool blowup_lambda_free = true;
  IntegratorControl integrator;
  int verify_test_count = 8;
  std::string output_dir = "out";
  int threads = 1;
};

/// Parses the INI/TOML subset documented in default_config_text():
/// [section] headers, key = value lines, # comments, numbers, booleans,
/// quoted strings, one-line arrays and one-line arrays of [alpha, s]
/// pairs. Unknown sections or keys are errors.
RunConfig parse_config(const std::string& text);

/// read_file + parse_config.
RunConfig load_config(const std::string& path);

/// A complete, commented configuration that parses to a runnable setup
/// (the reference singular problem at lambda = 0.05).
std::string default_config_text();

}  // namespace plap
