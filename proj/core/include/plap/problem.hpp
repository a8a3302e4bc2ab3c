#pragma once

#include <limits>
#include <vector>

namespace plap {

/// One term alpha * t^s of the perturbation. Exponents must be positive so
/// the perturbation vanishes at t = 0.
struct Monomial {
  double alpha = 0.0;
  double s = 1.0;
};

/// Perturbation f(t) = sum_i alpha_i t^{s_i}, together with the constant
/// c0 in (0,1) used by the sign condition f(t) + c0 t^q >= 0.
struct FSpec {
  std::vector<Monomial> monomials;
  double c0 = 0.5;

  bool empty() const { return monomials.empty(); }
};

/// Right-hand-side selector. `full` is the model equation; the other two are
/// reduced forms used by scaling studies and closed-form oracles.
enum class ForcingMode { full, pure_power, constant_rhs };

const char* to_string(ForcingMode mode);

/// Scalar data of the radial problem on the ball of radius `radius`:
///
///   -div(|grad u|^{p-2} grad u) = lambda((u+eps)^{-delta} + u^q + f(u)) + mu
///
/// with u > 0 inside and u = 0 on the boundary. eps = 0 selects the singular
/// problem, eps > 0 its regularization. Treat instances as immutable once
/// validated.
struct ProblemParams {
  int dim_n = 3;
  double p = 2.0;
  double q = 3.0;
  double delta = 0.5;
  double lambda = 0.0;
  double eps = 0.0;
  double mu = 0.0;
  double radius = 1.0;
  FSpec f;
  ForcingMode mode = ForcingMode::full;
  double constant_c = 0.0;  // right-hand side in constant_rhs mode
  /// Skips the 1 < p < N and p-1 < q < q_upper() checks. Deliberate escape
  /// hatch: sweeps may probe the window boundary, and constant-forcing
  /// oracles are valid for any p > 1.
  bool relax_exponent_window = false;

  /// Critical growth bound p*N/(N-p) - 1; +infinity when p >= N.
  double q_upper() const;
  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
  static ProblemParams checked(ProblemParams raw);
};

double eval_f(double t, const FSpec& f);
double eval_f_prime(double t, const FSpec& f);

/// Outcome of the structural + sign test on the perturbation.
/// structural: every exponent lies in (0, q), so f(0) = 0 and f(t)/t^q -> 0.
/// positivity: f(t) + c0 t^q >= 0 on a log grid over [1e-8, 1e8] refined by
/// scalar minimization and closed-form pairwise stationary points.
struct HypothesisReport {
  bool structural_ok = false;
  bool positivity_ok = false;
  double worst_t = std::numeric_limits<double>::quiet_NaN();
  double min_value = std::numeric_limits<double>::quiet_NaN();
  /// Smallest probed t with a strict sign violation; NaN when none.
  double first_violation_t = std::numeric_limits<double>::quiet_NaN();

  bool pass() const { return structural_ok && positivity_ok; }
};

HypothesisReport check_hypothesis_H(const FSpec& f, double q);

/// g(t) = lambda((t+eps)^{-delta} + t^q + f(t)) + mu, the forcing of the
/// regularized problem. Throws std::domain_error at t = 0 when eps = 0.
double eval_g(double t, const ProblemParams& params);
double eval_g_prime(double t, const ProblemParams& params);

/// Mode-aware right-hand side used by the integrator and the residual
/// checks: eval_g in full mode, lambda t^q + mu in pure_power mode, the
/// stored constant in constant_rhs mode.
double forcing_value(double t, const ProblemParams& params);

/// Grid test of g' <= 0 on (0, t_max]; the interval where the forcing is
/// nonincreasing is where sub/supersolution ordering arguments apply.
bool is_g_nonincreasing(const ProblemParams& params, double t_max,
                        int samples = 512);

/// k = inf over t > 0 of (mu + lambda(1-c0) t^q) / t^{p-1}. Solutions can
/// exist only while k stays below the first Dirichlet eigenvalue.
struct PiconeThreshold {
  double k = 0.0;
  double t_star = std::numeric_limits<double>::quiet_NaN();
  /// Set when lambda(1-c0) = 0 with mu > 0: the infimum degenerates to 0 at
  /// t -> infinity and the stationary-point formula does not apply.
  bool degenerate = false;
};

PiconeThreshold picone_threshold(const ProblemParams& params);

}  // namespace plap
