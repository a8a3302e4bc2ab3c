#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "plap/quadrature.hpp"
#include "plap/radial_ode.hpp"
#include "plap/shooting.hpp"

namespace plap {

// C^2 bump (1 - x^2)^3 on |x| < 1 with x = (r - center)/halfwidth,
// zero outside.  Smooth enough to test the weak form of a C^1 profile.
struct TestBump {
  double center = 0.0;
  double halfwidth = 1.0;
  double value(double r) const;
  double derivative(double r) const;
};

// count bumps centered at j * r_max/(count+2), j = 1..count, sharing
// halfwidth r_max/(count+2).  All supports stay inside
// (0, r_max * (count+1)/(count+2)), clear of both endpoints.
std::vector<TestBump> interior_bumps(double r_max, int count = 8);

// Largest normalized weak-form defect over the bump family:
//   | int phi_p(u') phi' r^(N-1) dr - int h(u) phi r^(N-1) dr |
// divided by int |phi'| r^(N-1) dr, maximized over phi.
// The overload taking params uses the problem forcing for h.
double weak_residual(const RadialProfile& profile, const ProblemParams& params,
                     int test_count = 8);
double weak_residual_forcing(const RadialProfile& profile,
                             const std::function<double(double)>& forcing,
                             int test_count = 8, double r_max = 0.0);

// Slope checks on the stored grid.
struct MonotonicityCheck {
  bool pass = false;
  double worst_slope = 0.0;     // max of du over r > 0, should be <= 0
  double worst_increase = 0.0;  // max of u[i+1] - u[i], should be < 0
};
MonotonicityCheck check_radial_monotonicity(const RadialProfile& profile);

// Best constant c with u(r) >= c (R - r) on the stored grid.  Needs a
// profile that reaches the boundary.
struct ConeBound {
  double constant = 0.0;
  double slope_at_boundary = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
};
ConeBound check_cone_bound(const RadialProfile& profile);

// Integrability of u^(-delta) against the volume weight.  `value` is
// int u^(-delta) r^(N-1) dr with the boundary tail handled by the
// desingularizing substitution; `comparison_bound` is the closed form
// c^(-delta) R^(N-delta) B(N, 1-delta) implied by the cone bound.
struct HardyResult {
  double value = std::numeric_limits<double>::quiet_NaN();
  double comparison_bound = std::numeric_limits<double>::quiet_NaN();
  double cone_constant = 0.0;
  bool certified = false;
};
HardyResult hardy_integrability(const RadialProfile& profile,
                                const ProblemParams& params);

// Pointwise ordering of two profiles on their shared uniform grid.
// Expects the smaller regularization to dominate; worst_gap is the
// minimum of (lower_eps - higher_eps) and may be a small negative
// roundoff amount on a passing pair.
struct OrderCheck {
  bool pass = false;
  double worst_gap = std::numeric_limits<double>::quiet_NaN();
  std::size_t points = 0;
};
OrderCheck eps_monotonicity(const RadialProfile& higher_eps,
                            const RadialProfile& lower_eps);

// Weighted comparison of the forcing against the principal frequency:
//   lhs = int h(u)/u^(p-1) phi1^p r^(N-1) dr,  rhs = lambda1 int phi1^p r^(N-1) dr.
// A positive solution keeps lhs <= rhs; equality holds when u is the
// eigenfunction itself.
struct PiconeResult {
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
};
PiconeResult picone_check(const RadialProfile& profile,
                          const ProblemParams& params, const EigenPair& eigen);
PiconeResult picone_check_forcing(const RadialProfile& profile,
                                  const std::function<double(double)>& forcing,
                                  const EigenPair& eigen);

// Structure inequality behind uniqueness arguments:
//   lhs = int (phi_p(w') - phi_p(v')) (w' - v') r^(N-1) dr >= 0,
// with equality only for matching gradients.  gap_p_norm is
// (int |w'-v'|^p r^(N-1) dr)^(1/p) and coercivity = lhs / gap_p_norm^p.
struct MonotoneOperatorResult {
  double lhs = 0.0;
  double gap_p_norm = 0.0;
  double coercivity = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
};
MonotoneOperatorResult monotone_operator_check(const RadialProfile& w,
                                               const RadialProfile& v,
                                               double p);

// Zoom normalization of a large-amplitude profile: v(x) = u(Mx)/H with
// H = u(0) and M = H^((p-1-q)/p), stored as a profile on the x grid.
struct RescaledProfile {
  double amplitude = 0.0;
  double scale = 0.0;
  RadialProfile v;
};

// Rescales an amplitude-ordered family and measures how close each
// member is to the power-law limit equation on the common x window.
// residual tests -Delta_p v = lambda v^q; the lambda_free variant
// absorbs lambda into the zoom scale and tests -Delta_p v = v^q.
// singular_center/mid and f_center are the sizes of the terms the
// limit drops, evaluated at v = 1 and v = 1/2.
struct BlowupResult {
  std::vector<RescaledProfile> family;
  double overlap = 0.0;
  std::vector<double> residual;
  std::vector<double> residual_lambda_free;
  std::vector<double> singular_center;
  std::vector<double> singular_mid;
  std::vector<double> f_center;
  bool residuals_nonincreasing = true;
  bool center_normalized = true;
};
BlowupResult blowup_rescale(const std::vector<RadialProfile>& family,
                            const ProblemParams& params, int test_count = 8);

// Sup norms along a solution family should stabilize; bounded means the
// last relative change is below 1e-3.
struct AprioriResult {
  bool bounded = false;
  double final_sup = std::numeric_limits<double>::quiet_NaN();
  double last_rel_change = std::numeric_limits<double>::quiet_NaN();
};
AprioriResult apriori_bound(const std::vector<RadialProfile>& family);

struct CheckEntry {
  std::string name;
  std::vector<std::pair<std::string, double>> measured;
  double threshold = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
};

struct VerificationReport {
  std::vector<CheckEntry> checks;
  bool overall() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Full battery for one solved profile: forcing hypotheses, shape,
// boundary cone, weak residual, integrability, frequency comparison.
// Computes the first eigenpair on demand when none is supplied.
VerificationReport standard_report(const RadialProfile& profile,
                                   const ProblemParams& params,
                                   const EigenPair* eigen = nullptr,
                                   int test_count = 8);

std::string report_to_json(const VerificationReport& report);

}  // namespace plap
