#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "plap/csv.hpp"
#include "plap/verify.hpp"

using namespace plap;

namespace {

ProblemParams constant_problem(double c, double p, int dim, double radius) {
  ProblemParams prm;
  prm.mode = ForcingMode::constant_rhs;
  prm.constant_c = c;
  prm.p = p;
  prm.dim_n = dim;
  prm.radius = radius;
  return prm;
}

// u = 1 - r^2 solves -Delta u = 6 on the unit ball in R^3
RadialProfile parabola_profile() {
  return integrate_profile(1.0, constant_problem(6.0, 2.0, 3, 1.0));
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("test bumps stay interior and differentiate cleanly") {
  const std::vector<TestBump> bumps = interior_bumps(1.0, 8);
  REQUIRE(bumps.size() == 8);
  for (std::size_t j = 0; j < bumps.size(); ++j) {
    const TestBump& b = bumps[j];
    CHECK(b.center == doctest::Approx((j + 1) / 10.0));
    CHECK(b.halfwidth == doctest::Approx(0.1));
    CHECK(b.center - b.halfwidth >= 0.0);
    CHECK(b.center + b.halfwidth <= 0.9 + 1e-12);
    CHECK(b.value(b.center) == doctest::Approx(1.0));
    CHECK(b.value(b.center + b.halfwidth) <= 1e-40);  // support edge
    CHECK(b.value(b.center - b.halfwidth - 0.01) == 0.0);
    CHECK(b.derivative(b.center) == doctest::Approx(0.0));
  }
  // finite-difference cross-check of the derivative
  const TestBump& b = bumps[3];
  const double r = b.center + 0.3 * b.halfwidth;
  const double h = 1e-6;
  const double fd = (b.value(r + h) - b.value(r - h)) / (2.0 * h);
  CHECK(b.derivative(r) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("weak residual vanishes on a solution and flags a wrong forcing") {
  const RadialProfile prof = parabola_profile();
  CHECK(weak_residual(prof, prof.params) < 1e-8);
  CHECK(weak_residual_forcing(prof, [](double) { return 6.0; }) < 1e-8);
  CHECK(weak_residual_forcing(prof, [](double) { return 5.0; }) > 1e-3);
}

TEST_CASE("radial monotonicity check") {
  CHECK(check_radial_monotonicity(parabola_profile()).pass);

  RadialProfile rising;
  rising.r = {0.0, 0.5, 1.0};
  rising.u = {0.0, 0.1, 0.2};
  rising.du = {0.2, 0.2, 0.2};
  rising.center_value = 0.0;
  const MonotonicityCheck bad = check_radial_monotonicity(rising);
  CHECK_FALSE(bad.pass);
  CHECK(bad.worst_slope > 0.0);
}

TEST_CASE("boundary cone bound on the parabola") {
  // (1 - r^2)/(1 - r) = 1 + r, so the best cone constant is 1
  const ConeBound cb = check_cone_bound(parabola_profile());
  CHECK(cb.pass);
  CHECK(cb.constant == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cb.slope_at_boundary == doctest::Approx(2.0).epsilon(1e-6));

  RadialProfile stuck;
  stuck.r = {0.0, 0.5};
  stuck.u = {1.0, 0.8};
  stuck.du = {0.0, -0.4};
  stuck.center_value = 1.0;
  stuck.terminated = Termination::hit_zero;
  CHECK_FALSE(check_cone_bound(stuck).pass);
}

TEST_CASE("singular-weight integrability certificate") {
  const RadialProfile prof = parabola_profile();
  const HardyResult hr = hardy_integrability(prof, prof.params);
  // int_0^1 (1 - r^2)^{-1/2} r^2 dr = pi/4
  CHECK(hr.value == doctest::Approx(0.7853981633974483).epsilon(1e-6));
  CHECK(hr.cone_constant == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(hr.comparison_bound > hr.value);
  CHECK(hr.certified);
}

TEST_CASE("profile ordering check") {
  const RadialProfile big = parabola_profile();
  const RadialProfile small =
      integrate_profile(0.75, constant_problem(4.5, 2.0, 3, 1.0));
  const OrderCheck good = eps_monotonicity(small, big);
  CHECK(good.pass);
  CHECK(good.points > 1000);
  CHECK(good.worst_gap > -1e-9);
  const OrderCheck flipped = eps_monotonicity(big, small);
  CHECK_FALSE(flipped.pass);
  CHECK(flipped.worst_gap < -0.2);
}

TEST_CASE("frequency comparison accepts a genuine solution") {
  const EigenPair eigen = first_eigenpair(2.0, 3, 1.0);
  const RadialProfile prof = parabola_profile();
  const PiconeResult pc = picone_check(prof, prof.params, eigen);
  CHECK(pc.pass);
  CHECK(pc.lhs <= pc.rhs * (1.0 + 1e-6));
  CHECK(pc.lhs > 0.0);

  // the eigenfunction with its own forcing saturates the inequality
  const double p = 2.0;
  const PiconeResult eq = picone_check_forcing(
      eigen.phi1,
      [&](double t) { return eigen.lambda1 * phi_p(t, p); }, eigen);
  CHECK(eq.pass);
  CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-7));
}

TEST_CASE("monotone operator form") {
  const RadialProfile w = parabola_profile();
  const RadialProfile v =
      integrate_profile(0.75, constant_problem(4.5, 2.0, 3, 1.0));
  const MonotoneOperatorResult res = monotone_operator_check(w, v, 2.0);
  CHECK(res.pass);
  CHECK(res.lhs > 0.0);
  CHECK(res.gap_p_norm > 0.0);
  // at p = 2 the form is exactly the squared gradient gap
  CHECK(res.coercivity == doctest::Approx(1.0).epsilon(1e-12));

  const MonotoneOperatorResult same = monotone_operator_check(w, w, 3.0);
  CHECK(same.pass);
  CHECK(same.lhs == 0.0);
  CHECK(same.gap_p_norm == 0.0);
}

TEST_CASE("zoom rescaling normalizes amplitudes") {
  ProblemParams prm;  // p = 2, q = 3
  prm.mode = ForcingMode::pure_power;
  prm.lambda = 1.0;
  std::vector<RadialProfile> family;
  family.push_back(integrate_profile(4.0, prm));
  family.push_back(integrate_profile(16.0, prm));
  const BlowupResult bp = blowup_rescale(family, prm);
  REQUIRE(bp.family.size() == 2);
  CHECK(bp.family[0].amplitude == 4.0);
  CHECK(bp.family[1].amplitude == 16.0);
  // scale = H^{(p-1-q)/p} = 1/H at p = 2, q = 3
  CHECK(bp.family[0].scale == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(bp.family[1].scale == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
  CHECK(bp.family[0].v.u.front() == 1.0);
  CHECK(bp.family[1].v.u.front() == 1.0);
  CHECK(bp.center_normalized);
  CHECK(bp.overlap > 0.0);
  REQUIRE(bp.residual.size() == 2);
  CHECK(bp.residual[1] <= bp.residual[0] + 1e-6);
  // pure power family drops no terms
  CHECK(bp.singular_center[0] == 0.0);
  CHECK(bp.f_center[0] == 0.0);
}

TEST_CASE("family sup norms must stabilize for an a priori bound") {
  std::vector<RadialProfile> steady{parabola_profile(), parabola_profile()};
  CHECK(apriori_bound(steady).bounded);

  std::vector<RadialProfile> growing{
      integrate_profile(0.75, constant_problem(4.5, 2.0, 3, 1.0)),
      parabola_profile()};
  const AprioriResult ap = apriori_bound(growing);
  CHECK_FALSE(ap.bounded);
  CHECK(ap.final_sup == doctest::Approx(1.0));
}

TEST_CASE("report battery passes on a solved profile and serializes") {
  const RadialProfile prof = parabola_profile();
  const EigenPair eigen = first_eigenpair(2.0, 3, 1.0);
  const VerificationReport rep =
      standard_report(prof, prof.params, &eigen);
  CHECK(rep.overall());
  REQUIRE(rep.checks.size() == 7);
  CHECK(rep.checks.front().name == "hypothesis_H");

  const std::string json = report_to_json(rep);
  CHECK(json.find("\"overall\"") != std::string::npos);
  CHECK(json.find("weak_residual") != std::string::npos);
  CHECK(json.back() == '\n');
  // serialization is deterministic
  CHECK(report_to_json(rep) == json);
}

}  // TEST_SUITE
