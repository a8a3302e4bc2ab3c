#include "plap/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace plap {
namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("problem: " + what);
}

// Golden-section minimization; f is assumed unimodal-ish on [lo, hi]. Used
// only to polish grid minima, so no strict unimodality is required.
template <class F>
double golden_min(F&& f, double lo, double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * (std::abs(a) + std::abs(b));
       ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

}  // namespace

const char* to_string(ForcingMode mode) {
  switch (mode) {
    case ForcingMode::full: return "full";
    case ForcingMode::pure_power: return "pure_power";
    case ForcingMode::constant_rhs: return "constant";
  }
  return "?";
}

double ProblemParams::q_upper() const {
  if (p >= dim_n) return std::numeric_limits<double>::infinity();
  return p * dim_n / (dim_n - p) - 1.0;
}

void ProblemParams::validate() const {
  if (dim_n < 1) fail("dimension must be >= 1");
  if (!(p > 1.0)) fail("p must exceed 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) fail("radius must be positive");
  if (!(delta > 0.0 && delta < 1.0)) fail("delta must lie in (0,1)");
  if (!(eps >= 0.0)) fail("eps must be nonnegative");
  if (!(lambda >= 0.0)) fail("lambda must be nonnegative");
  if (!(mu >= 0.0)) fail("mu must be nonnegative");
  if (mode == ForcingMode::constant_rhs) {
    if (!(constant_c >= 0.0)) fail("constant forcing must be nonnegative");
  } else if (!relax_exponent_window) {
    if (!(p < dim_n))
      fail("p < N required (set relax_exponent_window to override)");
    if (!(q > p - 1.0 && q < q_upper()))
      fail("q must lie in (p-1, pN/(N-p)-1) "
           "(set relax_exponent_window to override)");
  }
  if (!(f.c0 > 0.0 && f.c0 < 1.0)) fail("c0 must lie in (0,1)");
  for (const auto& m : f.monomials) {
    if (!(m.s > 0.0)) fail("perturbation exponents must be positive");
    if (!relax_exponent_window && mode != ForcingMode::constant_rhs &&
        !(m.s < q))
      fail("perturbation exponents must stay below q");
    if (!std::isfinite(m.alpha)) fail("perturbation coefficient not finite");
  }
}

ProblemParams ProblemParams::checked(ProblemParams raw) {
  raw.validate();
  return raw;
}

double eval_f(double t, const FSpec& f) {
  if (!(t >= 0.0)) throw std::invalid_argument("eval_f: t must be >= 0");
  double acc = 0.0;
  for (const auto& m : f.monomials) acc += m.alpha * std::pow(t, m.s);
  return acc;
}

double eval_f_prime(double t, const FSpec& f) {
  if (!(t >= 0.0)) throw std::invalid_argument("eval_f_prime: t must be >= 0");
  double acc = 0.0;
  for (const auto& m : f.monomials)
    acc += m.alpha * m.s * std::pow(t, m.s - 1.0);
  return acc;
}

HypothesisReport check_hypothesis_H(const FSpec& f, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("check_hypothesis_H: q <= 0");

  HypothesisReport rep;
  rep.structural_ok = true;
  for (const auto& m : f.monomials)
    if (!(m.s > 0.0 && m.s < q)) rep.structural_ok = false;

  const auto value = [&](double t) {
    return eval_f(t, f) + f.c0 * std::pow(t, q);
  };
  // Magnitude of the individual terms; bounds the cancellation noise so a
  // rounding wobble around zero is not reported as a sign violation.
  const auto scale = [&](double t) {
    double s = f.c0 * std::pow(t, q);
    for (const auto& m : f.monomials) s += std::abs(m.alpha) * std::pow(t, m.s);
    return s;
  };

  std::vector<double> probes;
  constexpr int grid_n = 200;
  probes.reserve(grid_n + 16);
  for (int i = 0; i < grid_n; ++i)
    probes.push_back(std::pow(10.0, -8.0 + 16.0 * i / (grid_n - 1)));

  // Closed-form stationary points of every opposite-sign term pair, with the
  // leading c0 t^q term included as a pair member.
  std::vector<Monomial> terms = f.monomials;
  terms.push_back({f.c0, q});
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      const auto& a = terms[i];
      const auto& b = terms[j];
      if (a.alpha * b.alpha >= 0.0 || a.s == b.s) continue;
      const double t =
          std::pow(-(b.alpha * b.s) / (a.alpha * a.s), 1.0 / (a.s - b.s));
      if (std::isfinite(t) && t > 0.0) probes.push_back(t);
    }
  }

  std::sort(probes.begin(), probes.end());
  double best_t = probes.front();
  double best_v = value(best_t);
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double v = value(probes[i]);
    if (v < best_v) {
      best_v = v;
      best_t = probes[i];
      best_i = i;
    }
    if (std::isnan(rep.first_violation_t) && v < -1e-12 * scale(probes[i]))
      rep.first_violation_t = probes[i];
  }

  // Polish between the neighbors of the discrete minimizer.
  const double lo = probes[best_i > 0 ? best_i - 1 : 0];
  const double hi = probes[std::min(best_i + 1, probes.size() - 1)];
  if (hi > lo) {
    const double t = golden_min(value, lo, hi);
    const double v = value(t);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }

  rep.worst_t = best_t;
  rep.min_value = best_v;
  rep.positivity_ok = best_v >= -1e-12 * scale(best_t);
  if (rep.positivity_ok) rep.first_violation_t =
      std::numeric_limits<double>::quiet_NaN();
  return rep;
}

double eval_g(double t, const ProblemParams& params) {
  if (!(t >= 0.0)) throw std::invalid_argument("eval_g: t must be >= 0");
  if (params.eps == 0.0 && t == 0.0)
    throw std::domain_error("eval_g: singular at t = 0 with eps = 0");
  return params.lambda * (std::pow(t + params.eps, -params.delta) +
                          std::pow(t, params.q) + eval_f(t, params.f)) +
         params.mu;
}

double eval_g_prime(double t, const ProblemParams& params) {
  if (!(t >= 0.0)) throw std::invalid_argument("eval_g_prime: t must be >= 0");
  if (params.eps == 0.0 && t == 0.0)
    throw std::domain_error("eval_g_prime: singular at t = 0 with eps = 0");
  return params.lambda *
         (-params.delta * std::pow(t + params.eps, -params.delta - 1.0) +
          params.q * std::pow(t, params.q - 1.0) +
          eval_f_prime(t, params.f));
}

double forcing_value(double t, const ProblemParams& params) {
  switch (params.mode) {
    case ForcingMode::full: return eval_g(t, params);
    case ForcingMode::pure_power:
      return params.lambda * std::pow(t, params.q) + params.mu;
    case ForcingMode::constant_rhs: return params.constant_c;
  }
  return 0.0;
}

bool is_g_nonincreasing(const ProblemParams& params, double t_max,
                        int samples) {
  if (!(t_max > 0.0) || samples < 2)
    throw std::invalid_argument("is_g_nonincreasing: bad window");
  for (int i = 1; i <= samples; ++i) {
    const double t = t_max * i / samples;
    if (eval_g_prime(t, params) > 0.0) return false;
  }
  return true;
}

PiconeThreshold picone_threshold(const ProblemParams& params) {
  if (!(params.q > params.p - 1.0))
    throw std::invalid_argument("picone_threshold: requires q > p-1");
  if (!(params.lambda > 0.0 || params.mu > 0.0))
    throw std::invalid_argument("picone_threshold: requires lambda or mu > 0");

  const double growth = params.lambda * (1.0 - params.f.c0);
  PiconeThreshold out;
  if (params.mu == 0.0) {
    // infimum attained in the limit t -> 0+
    out.k = 0.0;
    out.t_star = 0.0;
    return out;
  }
  if (growth == 0.0) {
    // mu / t^{p-1} -> 0 as t -> infinity; no interior stationary point
    out.k = 0.0;
    out.degenerate = true;
    return out;
  }
  const double m = params.p - 1.0;
  out.t_star = std::pow(m * params.mu / ((params.q - m) * growth),
                        1.0 / params.q);
  out.k = (params.mu + growth * std::pow(out.t_star, params.q)) /
          std::pow(out.t_star, m);
  return out;
}

}  // namespace plap
