#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "plap/problem.hpp"

namespace plap {

/// phi_p(s) = |s|^{p-2} s with phi_p(0) = 0; odd and strictly increasing.
double phi_p(double s, double p);
/// Exact inverse sign(s) |s|^{1/(p-1)}.
double phi_p_inv(double s, double p);

enum class Termination { reached_r, hit_zero, diverged };

const char* to_string(Termination t);

/// State of the first-order system in the momentum variable
/// w(r) = -r^{N-1} phi_p(u'), which stays smooth where u' vanishes:
///   u' = -phi_p^{-1}(w / r^{N-1}),   w' = r^{N-1} g(u).
struct FluxState {
  double r = 0.0;
  double u = 0.0;
  double w = 0.0;
};

/// Radial solution sampled on a strictly increasing grid that merges a fixed
/// uniform grid over [0, r_stop] with every accepted integrator step, so
/// profiles of one problem are directly comparable pointwise.
struct RadialProfile {
  std::vector<double> r, u, du;
  double center_value = 0.0;  // u(0)
  ProblemParams params;
  Termination terminated = Termination::reached_r;
  double r_cross = std::numeric_limits<double>::quiet_NaN();
  /// Set when a singular-mode crossing had to be extrapolated after step
  /// underflow instead of located by dense-output bisection.
  bool reduced_accuracy = false;
  /// Positions of the uniform-grid nodes inside r/u/du.
  std::vector<std::size_t> uniform_idx;

  std::size_t size() const { return r.size(); }
  double r_end() const { return r.back(); }
  /// Interior maximum; the solution decreases from the center.
  double sup_norm() const { return u.front(); }

  std::vector<double> uniform_r() const;
  std::vector<double> uniform_u() const;
  std::vector<double> uniform_du() const;
};

struct IntegratorControl {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t uniform_points = 2048;
  std::size_t max_steps = 500000;
  double divergence_u = 1e12;
  /// When false, only accepted step endpoints are stored (cheap shots used
  /// inside scans and bisection loops).
  bool record_profile = true;
};

/// Second-order series expansion about the center removing the coordinate
/// singularity at r = 0:
///   u(r) = a - (g(a)/N)^{1/(p-1)} (p-1)/p r^{p/(p-1)} + o(r^{p/(p-1)}).
struct SeriesStart {
  double u = 0.0;
  double du = 0.0;
};

SeriesStart series_start(double a, double g_at_a, double p, int dim_n,
                         double r0);
SeriesStart series_start(double a, const ProblemParams& params, double r0);

/// Integrates the shooting initial-value problem u(0) = a, u'(0) = 0 up to
/// r = params.radius, the first zero of u, or divergence. Embedded 4(5)
/// pair with quartic dense output; in singular mode (full forcing, eps = 0,
/// lambda > 0) steps are capped so u loses at most 5% per step and a
/// crossing is extrapolated once u falls below 1e-9 a.
RadialProfile integrate_profile(double a, const ProblemParams& params,
                                const IntegratorControl& ctrl = {});

/// Closed-form Dirichlet solution of -div(|u'|^{p-2}u') = c on the ball:
///   u(r) = (c/N)^{1/(p-1)} (p-1)/p (R^{p/(p-1)} - r^{p/(p-1)}).
double constant_rhs_value(double c, const ProblemParams& params, double r);
double constant_rhs_slope(double c, const ProblemParams& params, double r);
/// The same solution sampled on the uniform grid, as a profile.
RadialProfile constant_rhs_oracle(double c, const ProblemParams& params,
                                  std::size_t points = 2048);

}  // namespace plap
