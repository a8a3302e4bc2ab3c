#pragma once

#include <limits>
#include <string>
#include <vector>

#include "plap/shooting.hpp"

namespace plap {

// Log-spaced shooting scan used whenever a solver has no warm start.
struct ScanOptions {
  double a_min = 1e-3;
  double a_max = 1e3;
  int points = 64;
};

struct ContinuationOptions {
  double eps0 = 0.1;     // first regularization level
  double factor = 0.25;  // geometric decay per step, in (0,1)
  int steps = 10;
  ScanOptions scan;      // fallback when the warm bracket around the
                         // previous center value fails
};

// Minimal-branch solutions along a decreasing regularization sequence
// eps_k = eps0 * factor^k.  The path stops early when no bracket is
// found or the solver fails; `diagnostic` then says why.
struct EpsPath {
  std::vector<double> eps_values;
  std::vector<RadialProfile> profiles;
  std::vector<double> a_stars;
  // sup over the shared uniform grid of |u_k - u_{k-1}|; first entry NaN
  std::vector<double> cauchy_increments;
  // smallest pointwise gap u_k(r) - u_{k-1}(r) across consecutive steps;
  // the regularized solutions grow as eps shrinks, so this should not
  // dip below roundoff
  double ordering_worst = std::numeric_limits<double>::quiet_NaN();
  bool ordering_ok = true;
  std::string diagnostic;

  std::size_t size() const { return profiles.size(); }
  bool complete(int steps) const {
    return static_cast<int>(profiles.size()) == steps;
  }
};

EpsPath eps_continuation(const ProblemParams& params,
                         const ContinuationOptions& opts = {},
                         const IntegratorControl& ctrl = {});

// Tail-of-path summary.  `converged` means the last Cauchy increment is
// below tol_rel times the sup norm of the final profile, which takes at
// least three profiles to witness.
struct LimitResult {
  bool converged = false;
  RadialProfile limit;
  double last_increment = std::numeric_limits<double>::quiet_NaN();
  double tolerance = std::numeric_limits<double>::quiet_NaN();
  // largest c with u(r) >= c (R - r) sampled on the stored grid; 0 when
  // the final profile does not reach the boundary
  double cone_constant = 0.0;
  std::string diagnostic;
};

LimitResult singular_limit(const EpsPath& path, double tol_rel = 1e-6);

// One solved branch point of a parameter sweep.  branch is -1 on rows
// that only record "no solution found at this parameter value".
struct SweepRecord {
  double param_value = 0.0;
  int branch = -1;
  double a_star = std::numeric_limits<double>::quiet_NaN();
  double sup_norm = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  double weak_residual = std::numeric_limits<double>::quiet_NaN();
};

struct LambdaSweepResult {
  std::vector<SweepRecord> records;
  // largest lambda carrying at least one converged record, NaN if none
  double lambda_max_existence = std::numeric_limits<double>::quiet_NaN();
};

// Solves every bracketed branch at each lambda.  Branch ids follow the
// nearest solution in log a from one lambda to the next; new branches
// get fresh ids.  Rows at a fixed lambda are ordered by ascending a.
// Integrations run on `threads` workers; output is scheduling independent.
LambdaSweepResult lambda_sweep(const ProblemParams& base,
                               const std::vector<double>& lambdas,
                               const ScanOptions& scan = {},
                               const IntegratorControl& ctrl = {},
                               int threads = 1);

// Existence probe against the comparison threshold: a solvable problem
// must keep its threshold k below the first eigenvalue.
struct MuProbeRow {
  double mu = 0.0;
  bool exists = false;
  double k = 0.0;
  double lambda1 = 0.0;
  bool consistent = true;
};

struct MuProbeResult {
  double lambda1 = 0.0;
  std::vector<MuProbeRow> rows;
  bool all_consistent = true;
};

MuProbeResult mu_probe(const ProblemParams& base,
                       const std::vector<double>& mus,
                       const ScanOptions& scan = {},
                       const IntegratorControl& ctrl = {});

}  // namespace plap
