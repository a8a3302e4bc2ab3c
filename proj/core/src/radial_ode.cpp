#include "plap/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace plap {
namespace {

// r^k for small nonnegative integer k; avoids pow() on the hot path and is
// exact for the common k = 0, 1, 2.
double rpow(double r, int k) {
  double acc = 1.0;
  for (int i = 0; i < k; ++i) acc *= r;
  return acc;
}

struct V2 {
  double u = 0.0;
  double w = 0.0;
};

V2 operator+(V2 a, V2 b) { return {a.u + b.u, a.w + b.w}; }
V2 operator*(double s, V2 a) { return {s * a.u, s * a.w}; }

// Mode-aware forcing with the evaluation domain clamped from below. The
// integrator may probe u slightly past a zero crossing inside a stage; the
// clamp keeps those probes inside the forcing's domain. In singular mode the
// floor is a denormal-safe positive value instead of 0.
std::function<double(double)> make_forcing(const ProblemParams& prm) {
  switch (prm.mode) {
    case ForcingMode::constant_rhs:
      return [c = prm.constant_c](double) { return c; };
    case ForcingMode::pure_power:
      return [lambda = prm.lambda, q = prm.q, mu = prm.mu](double t) {
        return lambda * std::pow(std::max(t, 0.0), q) + mu;
      };
    case ForcingMode::full:
      if (prm.eps > 0.0)
        return [prm](double t) { return eval_g(std::max(t, 0.0), prm); };
      return [prm](double t) { return eval_g(std::max(t, 1e-300), prm); };
  }
  throw std::logic_error("make_forcing: bad mode");
}

// Quartic dense-output segment of one accepted step (value and momentum).
// cont(theta) = c1 + theta (c2 + (1-theta)(c3 + theta (c4 + (1-theta) c5))),
// matching the step endpoint values and derivatives.
struct DenseSegment {
  double r0 = 0.0, h = 0.0;
  V2 c1, c2, c3, c4, c5;

  V2 eval(double theta) const {
    const double omt = 1.0 - theta;
    return c1 + theta * (c2 + omt * (c3 + theta * (c4 + omt * c5)));
  }
};

struct ProfileBuilder {
  RadialProfile prof;
  std::vector<double> grid;  // uniform nodes over [0, r_stop]
  std::size_t next = 0;
  double dedupe;

  ProfileBuilder(double r_stop, const IntegratorControl& ctrl) {
    dedupe = 1e-12 * r_stop;
    if (ctrl.record_profile) {
      const std::size_t n = std::max<std::size_t>(ctrl.uniform_points, 2);
      grid.resize(n);
      for (std::size_t j = 0; j < n; ++j)
        grid[j] = r_stop * static_cast<double>(j) / (n - 1);
      grid.back() = r_stop;
    }
  }

  void push(double r, double u, double du, bool uniform) {
    if (uniform) prof.uniform_idx.push_back(prof.r.size());
    prof.r.push_back(r);
    prof.u.push_back(u);
    prof.du.push_back(du);
  }

  // Emits pending uniform nodes strictly below r_new, then the node at r_new
  // itself, which absorbs a uniform node landing within dedupe of it.
  template <class Sample>
  void advance_to(double r_new, double u_new, double du_new, Sample&& at) {
    while (next < grid.size() && grid[next] < r_new - dedupe) {
      const auto [u, du] = at(grid[next]);
      push(grid[next], u, du, true);
      ++next;
    }
    bool absorbs = false;
    if (next < grid.size() && std::abs(grid[next] - r_new) <= dedupe) {
      absorbs = true;
      ++next;
    }
    push(r_new, u_new, du_new, absorbs);
  }
};

[[noreturn]] void integration_failure(const char* what, double r) {
  throw std::runtime_error(std::string("integrate_profile: ") + what +
                           " at r = " + std::to_string(r));
}

}  // namespace

double phi_p(double s, double p) {
  if (s == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(s), p - 1.0), s);
}

double phi_p_inv(double s, double p) {
  if (s == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(s), 1.0 / (p - 1.0)), s);
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::reached_r: return "reached_r";
    case Termination::hit_zero: return "hit_zero";
    case Termination::diverged: return "diverged";
  }
  return "?";
}

std::vector<double> RadialProfile::uniform_r() const {
  std::vector<double> out;
  out.reserve(uniform_idx.size());
  for (auto i : uniform_idx) out.push_back(r[i]);
  return out;
}

std::vector<double> RadialProfile::uniform_u() const {
  std::vector<double> out;
  out.reserve(uniform_idx.size());
  for (auto i : uniform_idx) out.push_back(u[i]);
  return out;
}

std::vector<double> RadialProfile::uniform_du() const {
  std::vector<double> out;
  out.reserve(uniform_idx.size());
  for (auto i : uniform_idx) out.push_back(du[i]);
  return out;
}

SeriesStart series_start(double a, double g_at_a, double p, int dim_n,
                         double r0) {
  if (!(a > 0.0) || !(r0 > 0.0))
    throw std::invalid_argument("series_start: requires a > 0 and r0 > 0");
  const double alpha = p / (p - 1.0);
  const double slope_scale = phi_p_inv(g_at_a / dim_n, p);
  SeriesStart s;
  s.du = -slope_scale * std::pow(r0, 1.0 / (p - 1.0));
  s.u = a - slope_scale * std::pow(r0, alpha) / alpha;
  return s;
}

SeriesStart series_start(double a, const ProblemParams& params, double r0) {
  return series_start(a, forcing_value(a, params), params.p, params.dim_n, r0);
}

RadialProfile integrate_profile(double a, const ProblemParams& params,
                                const IntegratorControl& ctrl) {
  params.validate();
  if (!(a > 0.0))
    throw std::invalid_argument("integrate_profile: requires a > 0");

  const double p = params.p;
  const int N = params.dim_n;
  const double r_stop = params.radius;
  const auto g = make_forcing(params);
  const bool singular = params.mode == ForcingMode::full &&
                        params.eps == 0.0 && params.lambda > 0.0;
  const double u_stop = singular ? 1e-9 * a : 0.0;

  const auto rhs = [&](double r, V2 y) -> V2 {
    const double rn = rpow(r, N - 1);
    return {-phi_p_inv(y.w / rn, p), rn * g(y.u)};
  };

  ProfileBuilder bld(r_stop, ctrl);
  bld.prof.params = params;
  bld.prof.center_value = a;

  // center node, then the series segment that carries the state off r = 0
  bld.push(0.0, a, 0.0, ctrl.record_profile);
  if (ctrl.record_profile) bld.next = 1;
  const double r0 = 1e-6 * r_stop;
  const double g_center = g(a);
  const auto series_at = [&](double r) -> std::pair<double, double> {
    const auto s = series_start(a, g_center, p, N, r);
    return {s.u, s.du};
  };
  {
    const auto s0 = series_start(a, g_center, p, N, r0);
    bld.advance_to(r0, s0.u, s0.du, series_at);
  }

  double r = r0;
  V2 y{bld.prof.u.back(), g_center * rpow(r0, N) / N};
  V2 k1 = rhs(r, y);
  double h = 0.5 * r0;
  bool rejected = false;

  // Dormand-Prince 5(4) tableau
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432.0,
                   d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0,
                   d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0,
                   d7 = 69997945.0 / 29380423.0;

  const auto du_from_w = [&](double rr, double ww) {
    return -phi_p_inv(ww / rpow(rr, N - 1), p);
  };

  const auto finish_singular = [&](double rr, double uu, double slope) {
    // u has decayed to the extrapolation band; locate the crossing linearly.
    const double fall = slope < 0.0 ? -slope : 1e-300;
    const double rc = rr + uu / fall;
    const auto linear_at = [&](double x) -> std::pair<double, double> {
      return {std::max(uu - fall * (x - rr), 0.0), slope};
    };
    if (rc >= r_stop - bld.dedupe) {
      bld.advance_to(r_stop, std::max(uu - fall * (r_stop - rr), 0.0), slope,
                     linear_at);
      bld.prof.terminated = Termination::reached_r;
    } else {
      bld.advance_to(rc, 0.0, slope, linear_at);
      bld.prof.terminated = Termination::hit_zero;
      bld.prof.r_cross = rc;
    }
    bld.prof.reduced_accuracy = true;
  };

  for (std::size_t step = 0;; ++step) {
    if (step >= ctrl.max_steps)
      integration_failure("step budget exhausted", r);

    if (singular && y.u <= u_stop) {
      finish_singular(r, y.u, k1.u);
      return bld.prof;
    }
    if (singular && k1.u < 0.0)
      h = std::min(h, 0.05 * y.u / -k1.u);

    bool final_step = false;
    if (r + h >= r_stop) {
      h = r_stop - r;
      final_step = true;
    }
    if (h <= std::max(1e-15 * r, 1e-300)) {
      if (singular) {
        finish_singular(r, y.u, k1.u);
        return bld.prof;
      }
      if (k1.u > 0.0 && y.u > bld.prof.u.front()) {
        // step collapse on a rising trajectory is a vertical asymptote,
        // reached before any finite divergence threshold can trigger
        bld.prof.terminated = Termination::diverged;
        return bld.prof;
      }
      integration_failure("step size underflow", r);
    }

    const V2 k2 = rhs(r + h * a21, y + (h * a21) * k1);
    const V2 k3 = rhs(r + h * 0.3, y + h * (a31 * k1 + a32 * k2));
    const V2 k4 = rhs(r + h * 0.8, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const V2 k5 = rhs(r + h * (8.0 / 9.0),
                      y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const V2 k6 = rhs(r + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 +
                                      a64 * k4 + a65 * k5));
    const V2 ynew =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const V2 k7 = rhs(r + h, ynew);
    const V2 ev =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double su =
        ctrl.abs_tol + ctrl.rel_tol * std::max(std::abs(y.u), std::abs(ynew.u));
    const double sw =
        ctrl.abs_tol + ctrl.rel_tol * std::max(std::abs(y.w), std::abs(ynew.w));
    const double eu = ev.u / su, ew = ev.w / sw;
    const double err = std::sqrt(0.5 * (eu * eu + ew * ew));

    if (!(err <= 1.0) || !std::isfinite(ynew.u) || !std::isfinite(ynew.w)) {
      if (!std::isfinite(err) || !std::isfinite(ynew.u) ||
          !std::isfinite(ynew.w)) {
        h *= 0.2;
      } else {
        h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      }
      rejected = true;
      continue;
    }

    DenseSegment seg;
    seg.r0 = r;
    seg.h = h;
    seg.c1 = y;
    seg.c2 = {ynew.u - y.u, ynew.w - y.w};
    seg.c3 = h * k1 + (-1.0) * seg.c2;
    seg.c4 = seg.c2 + (-1.0) * (h * k7) + (-1.0) * seg.c3;
    seg.c5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
    const auto dense_at = [&](double rr) -> std::pair<double, double> {
      const V2 v = seg.eval((rr - seg.r0) / seg.h);
      return {v.u, du_from_w(rr, v.w)};
    };

    if (ynew.u > ctrl.divergence_u) {
      bld.advance_to(r + h, ynew.u, du_from_w(r + h, ynew.w), dense_at);
      bld.prof.terminated = Termination::diverged;
      return bld.prof;
    }

    if (ynew.u <= 0.0) {
      // monotone decrease makes the sign change a bracket for the crossing
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (seg.eval(mid).u > 0.0 ? lo : hi) = mid;
      }
      const double theta = hi;
      const double rc = r + theta * h;
      if (rc >= r_stop - bld.dedupe) {
        // crossing within rounding of the boundary counts as arrival
        bld.advance_to(r_stop, std::max(seg.eval(theta).u, 0.0),
                       du_from_w(r_stop, seg.eval(theta).w), dense_at);
        bld.prof.terminated = Termination::reached_r;
      } else {
        bld.advance_to(rc, 0.0, du_from_w(rc, seg.eval(theta).w), dense_at);
        bld.prof.terminated = Termination::hit_zero;
        bld.prof.r_cross = rc;
      }
      return bld.prof;
    }

    bld.advance_to(r + h, ynew.u, du_from_w(r + h, ynew.w), dense_at);
    r += h;
    y = ynew;
    k1 = k7;

    if (final_step) {
      bld.prof.terminated = Termination::reached_r;
      return bld.prof;
    }

    double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    fac = std::clamp(fac, 0.2, rejected ? 1.0 : 5.0);
    rejected = false;
    h *= fac;
  }
}

double constant_rhs_value(double c, const ProblemParams& params, double r) {
  const double alpha = params.p / (params.p - 1.0);
  const double scale = phi_p_inv(c / params.dim_n, params.p) / alpha;
  return scale * (std::pow(params.radius, alpha) - std::pow(r, alpha));
}

double constant_rhs_slope(double c, const ProblemParams& params, double r) {
  return -phi_p_inv(c * r / params.dim_n, params.p);
}

RadialProfile constant_rhs_oracle(double c, const ProblemParams& params,
                                  std::size_t points) {
  params.validate();
  if (!(c >= 0.0) || points < 2)
    throw std::invalid_argument("constant_rhs_oracle: bad arguments");
  RadialProfile prof;
  prof.params = params;
  prof.params.mode = ForcingMode::constant_rhs;
  prof.params.constant_c = c;
  prof.terminated = Termination::reached_r;
  prof.r.resize(points);
  prof.u.resize(points);
  prof.du.resize(points);
  prof.uniform_idx.resize(points);
  for (std::size_t j = 0; j < points; ++j) {
    const double r = params.radius * static_cast<double>(j) / (points - 1);
    prof.r[j] = r;
    prof.u[j] = constant_rhs_value(c, params, r);
    prof.du[j] = constant_rhs_slope(c, params, r);
    prof.uniform_idx[j] = j;
  }
  prof.u.back() = 0.0;
  prof.center_value = prof.u.front();
  return prof;
}

}  // namespace plap
