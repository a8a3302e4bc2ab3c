#pragma once

#include <string>

#include "plap/config.hpp"

namespace plap {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNoSolution = 2;    // honest nonexistence result
inline constexpr int kExitVerifyFailed = 3;  // solved but a check failed
inline constexpr int kExitConfigError = 64;  // unusable input
inline constexpr int kExitInternal = 70;     // unexpected failure

// Each command writes its artifacts under out_dir (created on demand),
// prints a short summary to stdout and returns an exit code. Outputs are
// deterministic: rerunning a command reproduces its files byte for byte.

// scan.csv, profile.csv, profile.svg, report.json for the minimal branch.
int cmd_solve(const RunConfig& cfg, const std::string& out_dir);

// bifurcation.csv/svg over [sweep] lambdas (must increase strictly).
int cmd_sweep(const RunConfig& cfg, const std::string& out_dir);

// eps_path.csv, limit_profile.csv, continuation.svg along the
// regularization path, plus the Cauchy-tail verdict.
int cmd_continue(const RunConfig& cfg, const std::string& out_dir);

// eigen.csv/svg with the first eigenvalue and eigenfunction.
int cmd_eigen(const RunConfig& cfg, const std::string& out_dir);

// Re-checks a stored profile.csv against the configured problem and
// writes report.json; byte-identical to the report of the solve that
// produced the profile.
int cmd_verify(const RunConfig& cfg, const std::string& profile_csv,
               const std::string& out_dir);

// blowup.csv, rescaled.svg for the amplitude family in [blowup].
int cmd_blowup(const RunConfig& cfg, const std::string& out_dir);

}  // namespace plap
