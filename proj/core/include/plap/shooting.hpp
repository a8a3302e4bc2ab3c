#pragma once

#include <stdexcept>
#include <vector>

#include "plap/radial_ode.hpp"

namespace plap {

/// One shot of the initial-value problem from center value a, with its
/// scalar miss:
///   reached_r  -> miss = u(R) >= 0      (undershoot)
///   hit_zero   -> miss = r_cross - R < 0 (overshoot)
///   diverged   -> miss = +infinity sentinel
/// The two branches vanish together as the crossing approaches the boundary,
/// so the miss changes sign continuously across a solution.
struct ShotResult {
  double a = 0.0;
  double miss = 0.0;
  RadialProfile profile;
};

ShotResult shoot(double a, const ProblemParams& params,
                 const IntegratorControl& ctrl = {});

struct Bracket {
  double a_lo = 0.0, a_hi = 0.0;
  double miss_lo = 0.0, miss_hi = 0.0;
};

struct BracketScan {
  struct Sample {
    double a = 0.0;
    double miss = 0.0;
    Termination terminated = Termination::reached_r;
  };
  std::vector<Sample> samples;
  std::vector<Bracket> brackets;
};

/// Evaluates the miss on n log-spaced center values in [a_min, a_max] and
/// returns every sign-change interval. An empty result is meaningful
/// (nonexistence of a shooting solution in the scanned range).
BracketScan bracket_scan(const ProblemParams& params, double a_min = 1e-3,
                         double a_max = 1e3, int n = 64,
                         const IntegratorControl& ctrl = {});

struct BvpError : std::runtime_error {
  BvpError(const std::string& what, ShotResult best_iterate)
      : std::runtime_error(what), best(std::move(best_iterate)) {}
  ShotResult best;
};

/// Root-polishes the miss inside a sign-change bracket (bisection with
/// secant acceleration) until the undershoot side satisfies
/// u(R) < 1e-10 min(R, a). Returns the converged shot, re-integrated with
/// full profile recording. Throws BvpError with the best iterate after 200
/// iterations without convergence.
ShotResult solve_bvp(const ProblemParams& params, const Bracket& bracket,
                     const IntegratorControl& ctrl = {});

/// First Dirichlet eigenpair of the radial p-Laplacian on the ball:
/// -(r^{N-1} phi_p(v'))' = lambda1 r^{N-1} phi_p(v), v(0) = 1, v'(0) = 0,
/// with v > 0 on [0, R) and v(R) = 0. Found by bisection on lambda using
/// the location of the first zero, which decreases strictly in lambda.
struct EigenPair {
  double lambda1 = 0.0;
  RadialProfile phi1;
};

EigenPair first_eigenpair(double p, int dim_n, double radius,
                          const IntegratorControl& ctrl = {});

}  // namespace plap
