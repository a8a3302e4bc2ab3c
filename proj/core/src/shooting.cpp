#include "plap/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace plap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double miss_of(const RadialProfile& prof) {
  switch (prof.terminated) {
    case Termination::reached_r: return prof.u.back();
    case Termination::hit_zero: return prof.r_cross - prof.params.radius;
    case Termination::diverged: return kInf;
  }
  return kInf;
}

// The eigen-equation forcing lambda phi_p(t) coincides with the pure-power
// mode at exponent q = p-1, so the eigen shot reuses the profile integrator.
ProblemParams eigen_params(double lambda, double p, int dim_n, double radius) {
  ProblemParams prm;
  prm.dim_n = dim_n;
  prm.p = p;
  prm.q = p - 1.0;
  prm.lambda = lambda;
  prm.mu = 0.0;
  prm.eps = 0.0;
  prm.radius = radius;
  prm.mode = ForcingMode::pure_power;
  prm.relax_exponent_window = true;
  return prm;
}

}  // namespace

ShotResult shoot(double a, const ProblemParams& params,
                 const IntegratorControl& ctrl) {
  ShotResult shot;
  shot.a = a;
  shot.profile = integrate_profile(a, params, ctrl);
  shot.miss = miss_of(shot.profile);
  return shot;
}

BracketScan bracket_scan(const ProblemParams& params, double a_min,
                         double a_max, int n, const IntegratorControl& ctrl) {
  if (!(a_min > 0.0 && a_max > a_min) || n < 2)
    throw std::invalid_argument("bracket_scan: bad scan range");
  IntegratorControl cheap = ctrl;
  cheap.record_profile = false;

  BracketScan scan;
  scan.samples.reserve(n);
  const double step = std::log(a_max / a_min) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double a = a_min * std::exp(step * i);
    const ShotResult s = shoot(a, params, cheap);
    scan.samples.push_back({a, s.miss, s.profile.terminated});
  }
  for (int i = 0; i + 1 < n; ++i) {
    const auto& lo = scan.samples[i];
    const auto& hi = scan.samples[i + 1];
    if (!std::isfinite(lo.miss) || !std::isfinite(hi.miss)) continue;
    const bool lo_neg = lo.miss < 0.0;
    const bool hi_neg = hi.miss < 0.0;
    if (lo_neg != hi_neg)
      scan.brackets.push_back({lo.a, hi.a, lo.miss, hi.miss});
  }
  return scan;
}

ShotResult solve_bvp(const ProblemParams& params, const Bracket& bracket,
                     const IntegratorControl& ctrl) {
  if ((bracket.miss_lo < 0.0) == (bracket.miss_hi < 0.0) ||
      !std::isfinite(bracket.miss_lo) || !std::isfinite(bracket.miss_hi))
    throw std::invalid_argument("solve_bvp: bracket misses must change sign");

  IntegratorControl cheap = ctrl;
  cheap.record_profile = false;

  // pos: undershoot side (miss >= 0, profile reaches the boundary)
  double a_pos, m_pos, a_neg, m_neg;
  if (bracket.miss_lo >= 0.0) {
    a_pos = bracket.a_lo;
    m_pos = bracket.miss_lo;
    a_neg = bracket.a_hi;
    m_neg = bracket.miss_hi;
  } else {
    a_pos = bracket.a_hi;
    m_pos = bracket.miss_hi;
    a_neg = bracket.a_lo;
    m_neg = bracket.miss_lo;
  }

  const auto tol_at = [&](double a) {
    return 1e-10 * std::min(params.radius, a);
  };

  double best_a = a_pos, best_m = m_pos;
  for (int it = 0; it < 200; ++it) {
    if (m_pos <= tol_at(a_pos)) {
      ShotResult out = shoot(a_pos, params, ctrl);
      if (out.profile.terminated != Termination::reached_r)
        out.profile.terminated = Termination::reached_r;
      return out;
    }

    // secant proposal inside the bracket, alternated with bisection;
    // the units of the two miss branches differ, which only skews the
    // secant point, never the bracketing
    const double lo = std::min(a_pos, a_neg), hi = std::max(a_pos, a_neg);
    double a_next = 0.5 * (lo + hi);
    if (it % 2 == 0 && m_pos != m_neg) {
      const double secant =
          (a_neg * m_pos - a_pos * m_neg) / (m_pos - m_neg);
      const double margin = 0.01 * (hi - lo);
      if (secant > lo + margin && secant < hi - margin) a_next = secant;
    }
    if (a_next == a_pos || a_next == a_neg) {
      // bracket narrowed to adjacent doubles; accept the undershoot side
      ShotResult out = shoot(a_pos, params, ctrl);
      if (out.miss <= tol_at(a_pos)) {
        out.profile.terminated = Termination::reached_r;
        return out;
      }
      break;
    }

    const ShotResult probe = shoot(a_next, params, cheap);
    if (std::isfinite(probe.miss) && probe.miss >= 0.0) {
      a_pos = a_next;
      m_pos = probe.miss;
      if (probe.miss < best_m) {
        best_a = a_next;
        best_m = probe.miss;
      }
    } else {
      a_neg = a_next;
      m_neg = probe.miss;
    }
  }

  ShotResult best = shoot(best_a, params, cheap);
  throw BvpError("solve_bvp: no convergence within 200 iterations", best);
}

EigenPair first_eigenpair(double p, int dim_n, double radius,
                          const IntegratorControl& ctrl) {
  if (!(p > 1.0) || dim_n < 1 || !(radius > 0.0))
    throw std::invalid_argument("first_eigenpair: bad arguments");

  IntegratorControl cheap = ctrl;
  cheap.record_profile = false;

  // true when the normalized shot stays positive all the way to the
  // boundary, i.e. the first zero lies beyond R and lambda is too small
  const auto below = [&](double lambda) {
    const RadialProfile prof =
        integrate_profile(1.0, eigen_params(lambda, p, dim_n, radius), cheap);
    return prof.terminated == Termination::reached_r;
  };

  double lo = 1e-3, hi = 1e3;
  int guard = 0;
  while (!below(lo)) {
    lo /= 10.0;
    if (++guard > 35)
      throw std::runtime_error("first_eigenpair: no lower bracket");
  }
  guard = 0;
  while (below(hi)) {
    hi *= 10.0;
    if (++guard > 35)
      throw std::runtime_error("first_eigenpair: no upper bracket");
  }

  for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (below(mid) ? lo : hi) = mid;
  }

  EigenPair pair;
  pair.lambda1 = lo;
  pair.phi1 = integrate_profile(1.0, eigen_params(lo, p, dim_n, radius), ctrl);
  return pair;
}

}  // namespace plap
