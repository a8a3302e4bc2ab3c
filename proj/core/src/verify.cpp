#include "plap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace plap {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

double rpow(double r, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= r;
  return out;
}

const GaussRule& quad_rule() {
  static const GaussRule rule = gauss_legendre(8);
  return rule;
}

double residual_impl(const RadialProfile& prof,
                     const std::function<double(double)>& forcing,
                     int test_count, double r_max) {
  if (prof.size() < 4)
    throw std::invalid_argument("weak_residual: profile too short");
  if (r_max <= 0.0) r_max = prof.r.back();
  r_max = std::min(r_max, prof.r.back());

  const double p = prof.params.p;
  const int n1 = prof.params.dim_n - 1;
  const ProfileInterpolant interp(prof);
  const GaussRule& rule = quad_rule();
  const auto bp = interp.breakpoints();

  double worst = 0.0;
  for (const TestBump& b : interior_bumps(r_max, test_count)) {
    const double lo = b.center - b.halfwidth;
    const double hi = b.center + b.halfwidth;
    const auto lhs_f = [&](double r) {
      return phi_p(interp.derivative(r), p) * b.derivative(r) * rpow(r, n1);
    };
    const auto rhs_f = [&](double r) {
      return forcing(interp.value(r)) * b.value(r) * rpow(r, n1);
    };
    const auto norm_f = [&](double r) {
      return std::abs(b.derivative(r)) * rpow(r, n1);
    };
    const double lhs = integrate_cells(lhs_f, lo, hi, bp, rule);
    const double rhs = integrate_cells(rhs_f, lo, hi, bp, rule);
    // |phi'| has a kink at the bump center; split there
    const double norm = integrate_cells(norm_f, lo, b.center, bp, rule) +
                        integrate_cells(norm_f, b.center, hi, bp, rule);
    worst = std::max(worst, std::abs(lhs - rhs) / norm);
  }
  return worst;
}

PiconeResult picone_impl(const RadialProfile& prof,
                         const std::function<double(double)>& forcing,
                         const EigenPair& eigen) {
  PiconeResult out;
  if (prof.size() < 4 || eigen.phi1.size() < 4) return out;

  const double p = prof.params.p;
  const int n1 = prof.params.dim_n - 1;
  const double R = prof.params.radius;
  const double delta = prof.params.delta;
  const ProfileInterpolant u(prof);
  const ProfileInterpolant phi(eigen.phi1);
  const GaussRule& rule = quad_rule();

  const auto lhs_f = [&](double r) {
    const double uv = std::max(u.value(r), 1e-300);
    const double pv = std::max(phi.value(r), 0.0);
    return forcing(uv) * std::pow(uv, 1.0 - p) * std::pow(pv, p) *
           rpow(r, n1);
  };
  const auto rhs_f = [&](double r) {
    const double pv = std::max(phi.value(r), 0.0);
    return std::pow(pv, p) * rpow(r, n1);
  };

  // The integrand keeps an (R-r)^{-delta} factor from the singular forcing
  // term; split off the last 2% and desingularize it by substitution.
  const double r_tail = 0.98 * R;
  out.lhs = integrate_cells(lhs_f, 0.0, r_tail, u.breakpoints(), rule) +
            integrate_boundary_layer(lhs_f, r_tail, R, delta, 48, rule);
  out.rhs = eigen.lambda1 *
            integrate_cells(rhs_f, 0.0, R, phi.breakpoints(), rule);
  out.pass = std::isfinite(out.lhs) && std::isfinite(out.rhs) &&
             out.lhs <= out.rhs * (1.0 + 1e-6);
  return out;
}

}  // namespace

double TestBump::value(double r) const {
  const double x = (r - center) / halfwidth;
  if (std::abs(x) >= 1.0) return 0.0;
  const double y = 1.0 - x * x;
  return y * y * y;
}

double TestBump::derivative(double r) const {
  const double x = (r - center) / halfwidth;
  if (std::abs(x) >= 1.0) return 0.0;
  const double y = 1.0 - x * x;
  return -6.0 * x * y * y / halfwidth;
}

std::vector<TestBump> interior_bumps(double r_max, int count) {
  if (!(r_max > 0.0) || count < 1)
    throw std::invalid_argument("interior_bumps: bad arguments");
  std::vector<TestBump> out;
  out.reserve(count);
  const double w = r_max / (count + 2);
  for (int j = 1; j <= count; ++j) out.push_back({j * w, w});
  return out;
}

double weak_residual(const RadialProfile& profile, const ProblemParams& params,
                     int test_count) {
  return residual_impl(
      profile, [&params](double t) { return forcing_value(t, params); },
      test_count, 0.0);
}

double weak_residual_forcing(const RadialProfile& profile,
                             const std::function<double(double)>& forcing,
                             int test_count, double r_max) {
  return residual_impl(profile, forcing, test_count, r_max);
}

MonotonicityCheck check_radial_monotonicity(const RadialProfile& profile) {
  MonotonicityCheck out;
  if (profile.size() < 2) return out;
  out.worst_slope = -kInf;
  out.worst_increase = -kInf;
  for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
    if (profile.r[i] > 0.0)
      out.worst_slope = std::max(out.worst_slope, profile.du[i]);
    out.worst_increase =
        std::max(out.worst_increase, profile.u[i + 1] - profile.u[i]);
  }
  out.worst_slope = std::max(out.worst_slope, profile.du.back());
  out.pass = out.worst_slope <= 0.0 && out.worst_increase < 0.0;
  return out;
}

ConeBound check_cone_bound(const RadialProfile& profile) {
  ConeBound out;
  if (profile.terminated != Termination::reached_r || profile.size() < 2)
    return out;
  const double R = profile.params.radius;
  double c = -profile.du.back();
  out.slope_at_boundary = c;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double gap = R - profile.r[i];
    if (gap > 1e-9 * R) c = std::min(c, profile.u[i] / gap);
  }
  out.constant = c;
  out.pass = std::isfinite(c) && c > 0.0;
  return out;
}

HardyResult hardy_integrability(const RadialProfile& profile,
                                const ProblemParams& params) {
  HardyResult out;
  const ConeBound cone = check_cone_bound(profile);
  out.cone_constant = cone.constant;
  if (!cone.pass) return out;

  const double R = profile.params.radius;
  const double delta = params.delta;
  const int n1 = profile.params.dim_n - 1;
  const ProfileInterpolant interp(profile);
  const auto f = [&](double r) {
    const double u = std::max(interp.value(r), 0.0);
    return std::pow(u, -delta) * rpow(r, n1);
  };
  const GaussRule& rule = quad_rule();
  const double r_tail = 0.98 * R;
  out.value = integrate_cells(f, 0.0, r_tail, interp.breakpoints(), rule) +
              integrate_boundary_layer(f, r_tail, R, delta, 48, rule);
  out.comparison_bound = std::pow(cone.constant, -delta) *
                         std::pow(R, n1 + 1 - delta) *
                         std::beta(static_cast<double>(n1 + 1), 1.0 - delta);
  out.certified =
      std::isfinite(out.value) && out.value <= out.comparison_bound * (1.0 + 1e-9);
  return out;
}

OrderCheck eps_monotonicity(const RadialProfile& higher_eps,
                            const RadialProfile& lower_eps) {
  OrderCheck out;
  const auto hu = higher_eps.uniform_u();
  const auto lu = lower_eps.uniform_u();
  out.points = std::min(hu.size(), lu.size());
  if (out.points == 0) return out;
  double worst = kInf;
  for (std::size_t i = 0; i < out.points; ++i)
    worst = std::min(worst, lu[i] - hu[i]);
  out.worst_gap = worst;
  const double scale =
      std::max(higher_eps.sup_norm(), lower_eps.sup_norm());
  out.pass = worst >= -1e-9 * scale;
  return out;
}

PiconeResult picone_check(const RadialProfile& profile,
                          const ProblemParams& params,
                          const EigenPair& eigen) {
  return picone_impl(
      profile, [&params](double t) { return forcing_value(t, params); },
      eigen);
}

PiconeResult picone_check_forcing(const RadialProfile& profile,
                                  const std::function<double(double)>& forcing,
                                  const EigenPair& eigen) {
  return picone_impl(profile, forcing, eigen);
}

MonotoneOperatorResult monotone_operator_check(const RadialProfile& w,
                                               const RadialProfile& v,
                                               double p) {
  if (w.size() < 4 || v.size() < 4)
    throw std::invalid_argument("monotone_operator_check: profile too short");
  MonotoneOperatorResult out;
  const int n1 = w.params.dim_n - 1;
  const double hi = std::min(w.r.back(), v.r.back());
  const ProfileInterpolant W(w), V(v);
  const GaussRule& rule = quad_rule();

  const auto lhs_f = [&](double r) {
    const double dw = W.derivative(r);
    const double dv = V.derivative(r);
    return (phi_p(dw, p) - phi_p(dv, p)) * (dw - dv) * rpow(r, n1);
  };
  const auto gap_f = [&](double r) {
    return std::pow(std::abs(W.derivative(r) - V.derivative(r)), p) *
           rpow(r, n1);
  };
  out.lhs = integrate_cells(lhs_f, 0.0, hi, W.breakpoints(), rule);
  const double gp = integrate_cells(gap_f, 0.0, hi, W.breakpoints(), rule);
  out.gap_p_norm = std::pow(gp, 1.0 / p);
  out.coercivity = gp > 0.0 ? out.lhs / gp : kNaN;
  out.pass = out.lhs >= 0.0;
  return out;
}

BlowupResult blowup_rescale(const std::vector<RadialProfile>& family,
                            const ProblemParams& params, int test_count) {
  BlowupResult out;
  if (family.empty()) return out;

  const double p = params.p, q = params.q;

  out.overlap = kInf;
  for (const RadialProfile& prof : family) {
    if (prof.size() < 4)
      throw std::invalid_argument("blowup_rescale: profile too short");
    RescaledProfile rp;
    rp.amplitude = prof.u.front();
    rp.scale = std::pow(rp.amplitude, (p - 1.0 - q) / p);
    rp.v.params = params;
    rp.v.terminated = prof.terminated;
    rp.v.reduced_accuracy = prof.reduced_accuracy;
    rp.v.uniform_idx = prof.uniform_idx;
    rp.v.r.reserve(prof.size());
    rp.v.u.reserve(prof.size());
    rp.v.du.reserve(prof.size());
    for (std::size_t i = 0; i < prof.size(); ++i) {
      rp.v.r.push_back(prof.r[i] / rp.scale);
      rp.v.u.push_back(prof.u[i] / rp.amplitude);
      rp.v.du.push_back(prof.du[i] * rp.scale / rp.amplitude);
    }
    rp.v.center_value = rp.v.u.front();
    rp.v.params.radius = rp.v.r.back();
    if (std::isfinite(prof.r_cross)) rp.v.r_cross = prof.r_cross / rp.scale;
    out.center_normalized = out.center_normalized && rp.v.u.front() == 1.0;
    out.overlap = std::min(out.overlap, rp.v.r.back());
    out.family.push_back(std::move(rp));
  }

  const double lam = params.lambda;
  const auto power_rhs = [lam, q](double t) {
    return lam * std::pow(std::max(t, 0.0), q);
  };
  const auto power_rhs_free = [q](double t) {
    return std::pow(std::max(t, 0.0), q);
  };
  // absorbing lambda into the zoom multiplies the x grid by lambda^{1/p}
  const double lam_scale = std::pow(lam, 1.0 / p);

  for (const RescaledProfile& rp : out.family) {
    out.residual.push_back(
        weak_residual_forcing(rp.v, power_rhs, test_count, out.overlap));
    if (lam > 0.0) {
      RadialProfile free = rp.v;
      for (double& x : free.r) x *= lam_scale;
      for (double& d : free.du) d /= lam_scale;
      free.params.radius = free.r.back();
      out.residual_lambda_free.push_back(weak_residual_forcing(
          free, power_rhs_free, test_count, out.overlap * lam_scale));
    } else {
      out.residual_lambda_free.push_back(kNaN);
    }

    const double H = rp.amplitude;
    if (params.mode == ForcingMode::full) {
      const double hq = std::pow(H, -q);
      out.singular_center.push_back(hq * std::pow(H + params.eps, -params.delta));
      out.singular_mid.push_back(
          hq * std::pow(0.5 * H + params.eps, -params.delta));
      out.f_center.push_back(hq * std::abs(eval_f(H, params.f)));
    } else {
      out.singular_center.push_back(0.0);
      out.singular_mid.push_back(0.0);
      out.f_center.push_back(0.0);
    }
  }

  for (std::size_t i = 1; i < out.residual.size(); ++i)
    if (!(out.residual[i] <= out.residual[i - 1] + 1e-6))
      out.residuals_nonincreasing = false;
  return out;
}

AprioriResult apriori_bound(const std::vector<RadialProfile>& family) {
  AprioriResult out;
  if (family.size() < 2) return out;
  const double last = family.back().sup_norm();
  const double prev = family[family.size() - 2].sup_norm();
  out.final_sup = last;
  out.last_rel_change = std::abs(last - prev) / std::max(last, 1e-300);
  out.bounded = out.last_rel_change < 1e-3;
  return out;
}

VerificationReport standard_report(const RadialProfile& profile,
                                   const ProblemParams& params,
                                   const EigenPair* eigen, int test_count) {
  VerificationReport rep;

  const HypothesisReport hyp = check_hypothesis_H(params.f, params.q);
  rep.checks.push_back({"hypothesis_H",
                        {{"worst_t", hyp.worst_t},
                         {"min_value", hyp.min_value}},
                        kNaN,
                        hyp.pass()});

  const MonotonicityCheck mono = check_radial_monotonicity(profile);
  rep.checks.push_back({"radial_monotonicity",
                        {{"worst_slope", mono.worst_slope},
                         {"worst_increase", mono.worst_increase}},
                        0.0,
                        mono.pass});

  double excess = -kInf;
  for (std::size_t i = 1; i < profile.size(); ++i)
    excess = std::max(excess, profile.u[i] - profile.u.front());
  rep.checks.push_back(
      {"interior_maximum", {{"max_excess", excess}}, 0.0, excess <= 0.0});

  const ConeBound cone = check_cone_bound(profile);
  rep.checks.push_back({"cone_bound",
                        {{"constant", cone.constant},
                         {"boundary_slope", cone.slope_at_boundary}},
                        0.0,
                        cone.pass});

  const double res = weak_residual(profile, params, test_count);
  rep.checks.push_back(
      {"weak_residual", {{"max_residual", res}}, 1e-6, res < 1e-6});

  const HardyResult hardy = hardy_integrability(profile, params);
  rep.checks.push_back({"hardy_integrability",
                        {{"value", hardy.value},
                         {"comparison_bound", hardy.comparison_bound},
                         {"cone_constant", hardy.cone_constant}},
                        kNaN,
                        hardy.certified});

  EigenPair local;
  const EigenPair* ep = eigen;
  if (ep == nullptr) {
    local = first_eigenpair(params.p, params.dim_n, params.radius);
    ep = &local;
  }
  const PiconeResult pic = picone_check(profile, params, *ep);
  rep.checks.push_back({"picone",
                        {{"lhs", pic.lhs},
                         {"rhs", pic.rhs},
                         {"lambda1", ep->lambda1}},
                        kNaN,
                        pic.pass});
  return rep;
}

std::string report_to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["overall"] = report.overall();
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckEntry& c : report.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (std::isfinite(c.threshold)) e["threshold"] = c.threshold;
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [key, val] : c.measured) {
      if (std::isfinite(val))
        m[key] = val;
      else
        m[key] = nullptr;
    }
    e["measured"] = m;
    j["checks"].push_back(e);
  }
  return j.dump(2) + "\n";
}

}  // namespace plap
