#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "plap/radial_ode.hpp"

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

}  // namespace

TEST_SUITE("radial_ode") {

TEST_CASE("series start matches the leading expansion") {
  // p = 2, N = 3: u = a - (g/N)/2 r^2, u' = -(g/N) r
  SeriesStart s = series_start(2.0, 3.0, 2.0, 3, 1e-3);
  CHECK(s.u == doctest::Approx(2.0 - 5e-7).epsilon(1e-14));
  CHECK(s.du == doctest::Approx(-1e-3).epsilon(1e-12));

  // p = 3, N = 2: u = a - (2/3)(g/N)^{1/2} r^{3/2}
  s = series_start(1.0, 2.0, 3.0, 2, 0.01);
  CHECK(s.u == doctest::Approx(1.0 - 2.0 / 3.0 * 1e-3).epsilon(1e-14));
  CHECK(s.du == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("constant forcing closed form") {
  const ProblemParams prm = constant_problem(2.0, 3.0, 2, 1.0);
  // (c/N)^{1/(p-1)} = 1, so u = (2/3)(1 - r^{3/2})
  CHECK(constant_rhs_value(2.0, prm, 0.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(constant_rhs_value(2.0, prm, 0.25) ==
        doctest::Approx(7.0 / 12.0).epsilon(1e-14));
  CHECK(constant_rhs_value(2.0, prm, 1.0) == doctest::Approx(0.0));
  // u' = -r^{1/2}
  CHECK(constant_rhs_slope(2.0, prm, 0.25) ==
        doctest::Approx(-0.5).epsilon(1e-14));

  const RadialProfile oracle = constant_rhs_oracle(2.0, prm, 512);
  CHECK(oracle.size() == 512);
  CHECK(oracle.terminated == Termination::reached_r);
  CHECK(oracle.sup_norm() == doctest::Approx(2.0 / 3.0));
  for (std::size_t i = 0; i < oracle.size(); i += 37) {
    CHECK(oracle.u[i] ==
          doctest::Approx(constant_rhs_value(2.0, prm, oracle.r[i])));
  }
}

TEST_CASE("integration reproduces the constant forcing solution") {
  const ProblemParams prm = constant_problem(2.0, 3.0, 2, 1.0);
  const double a = constant_rhs_value(2.0, prm, 0.0);
  IntegratorControl tight;
  tight.abs_tol = 1e-13;
  tight.rel_tol = 1e-11;
  const RadialProfile prof = integrate_profile(a, prm, tight);
  CHECK(prof.r_end() > 1.0 - 1e-7);
  double worst = 0.0;
  for (std::size_t i = 0; i < prof.size(); ++i)
    worst = std::max(worst,
                     std::abs(prof.u[i] - constant_rhs_value(2.0, prm,
                                                             prof.r[i])));
  CHECK(worst / a < 1e-8);
}

TEST_CASE("grid merges uniform nodes with accepted steps") {
  const ProblemParams prm = constant_problem(6.0, 2.0, 3, 1.0);
  IntegratorControl ctrl;
  ctrl.uniform_points = 256;
  const RadialProfile prof = integrate_profile(1.0, prm, ctrl);
  CHECK(prof.r.front() == 0.0);
  CHECK(prof.center_value == 1.0);
  for (std::size_t i = 1; i < prof.size(); ++i) CHECK(prof.r[i] > prof.r[i - 1]);
  const std::vector<double> ur = prof.uniform_r();
  CHECK(ur.size() == prof.uniform_idx.size());
  for (std::size_t k = 0; k < ur.size(); ++k)
    CHECK(ur[k] == prof.r[prof.uniform_idx[k]]);

  IntegratorControl cheap = ctrl;
  cheap.record_profile = false;
  const RadialProfile thin = integrate_profile(1.0, prm, cheap);
  CHECK(thin.uniform_idx.empty());
  CHECK(thin.r.front() == 0.0);
  CHECK(thin.sup_norm() == 1.0);
  CHECK(thin.size() < prof.size());
}

TEST_CASE("zero forcing keeps the profile flat") {
  ProblemParams prm;  // full mode, lambda = mu = 0
  const RadialProfile prof = integrate_profile(0.7, prm);
  CHECK(prof.terminated == Termination::reached_r);
  CHECK(prof.u.back() == doctest::Approx(0.7).epsilon(1e-12));
  double worst_slope = 0.0;
  for (const double d : prof.du) worst_slope = std::max(worst_slope, std::abs(d));
  CHECK(worst_slope < 1e-10);
}

TEST_CASE("full mode with only the constant term matches the oracle") {
  ProblemParams prm;  // p = 2, N = 3
  prm.lambda = 0.0;
  prm.mu = 6.0;
  ProblemParams oracle = constant_problem(6.0, 2.0, 3, 1.0);
  // u = 1 - r^2
  const RadialProfile prof = integrate_profile(1.0, prm);
  double worst = 0.0;
  for (std::size_t i = 0; i < prof.size(); ++i)
    worst = std::max(worst, std::abs(prof.u[i] -
                                     constant_rhs_value(6.0, oracle,
                                                        prof.r[i])));
  CHECK(worst < 1e-8);
  CHECK(prof.r_end() > 1.0 - 1e-7);
}

TEST_CASE("interior zero crossing is located precisely") {
  // u = 1 - r^2 on the ball of radius 2 crosses zero at r = 1
  const ProblemParams prm = constant_problem(6.0, 2.0, 3, 2.0);
  const RadialProfile prof = integrate_profile(1.0, prm);
  CHECK(prof.terminated == Termination::hit_zero);
  CHECK(prof.r_cross == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(prof.r_end() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(prof.u.back()) < 1e-9);
}

TEST_CASE("negative superlinear perturbation can blow up") {
  ProblemParams prm;
  prm.lambda = 1.0;
  prm.eps = 0.5;
  prm.f.monomials = {{-2.0, 5.0}};
  prm.relax_exponent_window = true;
  prm.validate();
  const RadialProfile prof = integrate_profile(2.0, prm);
  CHECK(prof.terminated == Termination::diverged);
  CHECK(prof.u.back() > 2.0);
}

TEST_CASE("singular mode shoots through the boundary layer") {
  ProblemParams prm;  // p = 2, N = 3, delta = 0.5, q = 3, eps = 0
  prm.lambda = 0.05;

  // below the minimal branch the singular term pulls u to zero early
  const RadialProfile low = integrate_profile(0.01, prm);
  CHECK(low.terminated == Termination::hit_zero);
  CHECK(low.r_cross < 1.0);

  // between the branches the shot clears the boundary with u(R) > 0
  const RadialProfile mid = integrate_profile(0.1, prm);
  CHECK(mid.terminated == Termination::reached_r);
  CHECK(mid.u.back() > 0.0);
  CHECK_FALSE(mid.reduced_accuracy);
}

}  // TEST_SUITE
