#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "plap/continuation.hpp"
#include "plap/csv.hpp"

using namespace plap;

namespace {

ProblemParams reference_problem() {
  ProblemParams prm;  // p = 2, N = 3, q = 3, delta = 0.5, eps = 0
  prm.lambda = 0.05;
  return prm;
}

}  // namespace

TEST_SUITE("continuation") {

TEST_CASE("regularization path is ordered and Cauchy") {
  const ProblemParams prm = reference_problem();
  ContinuationOptions opts;
  opts.steps = 12;
  const EpsPath path = eps_continuation(prm, opts);
  REQUIRE(path.complete(12));
  CHECK(path.diagnostic.empty());

  for (int k = 0; k < 12; ++k)
    CHECK(path.eps_values[k] ==
          doctest::Approx(0.1 * std::pow(0.25, k)).epsilon(1e-14));

  // smaller eps weakens the denominator shift, so the solutions grow
  for (std::size_t k = 1; k < path.size(); ++k)
    CHECK(path.a_stars[k] > path.a_stars[k - 1]);
  CHECK(path.ordering_ok);
  CHECK(path.ordering_worst > -1e-9 * path.profiles.back().sup_norm());

  REQUIRE(path.cauchy_increments.size() == 12);
  CHECK(std::isnan(path.cauchy_increments.front()));
  for (std::size_t k = 1; k < path.cauchy_increments.size(); ++k)
    CHECK(path.cauchy_increments[k] > 0.0);
  CHECK(path.cauchy_increments.back() < 0.01 * path.cauchy_increments[1]);

  SUBCASE("tail passes the Cauchy verdict") {
    const LimitResult lim = singular_limit(path);
    CHECK(lim.converged);
    CHECK(lim.last_increment < lim.tolerance);
    CHECK(lim.cone_constant > 0.0);
    // frozen anchor: minimal-branch center value at the smallest eps
    CHECK(lim.limit.sup_norm() ==
          doctest::Approx(0.0471878128068).epsilon(1e-5));
  }
}

TEST_CASE("short path does not pass the Cauchy verdict") {
  ContinuationOptions opts;
  opts.steps = 3;
  const EpsPath path = eps_continuation(reference_problem(), opts);
  REQUIRE(path.complete(3));
  const LimitResult lim = singular_limit(path);
  CHECK_FALSE(lim.converged);
  CHECK_FALSE(lim.diagnostic.empty());
}

TEST_CASE("continuation rejects reduced modes and reports dead ends") {
  ProblemParams prm = reference_problem();
  prm.mode = ForcingMode::pure_power;
  CHECK_THROWS_AS((void)eps_continuation(prm), std::invalid_argument);

  prm = reference_problem();
  prm.lambda = 0.0;
  CHECK_THROWS_AS((void)eps_continuation(prm), std::invalid_argument);

  // threshold above the principal frequency: no solution at any eps
  prm = reference_problem();
  prm.mu = 100.0;
  ContinuationOptions opts;
  opts.steps = 5;
  const EpsPath dead = eps_continuation(prm, opts);
  CHECK(dead.size() == 0);
  CHECK_FALSE(dead.complete(5));
  CHECK_FALSE(dead.diagnostic.empty());
}

TEST_CASE("branch sweep labels both branches deterministically") {
  const ProblemParams base = reference_problem();
  const std::vector<double> lambdas{0.02, 0.05};
  const LambdaSweepResult two = lambda_sweep(base, lambdas, {}, {}, 2);
  REQUIRE(two.records.size() == 4);
  CHECK(two.records[0].param_value == 0.02);
  CHECK(two.records[1].param_value == 0.02);
  CHECK(two.records[2].param_value == 0.05);
  CHECK(two.records[3].param_value == 0.05);
  CHECK(two.records[0].branch == 0);
  CHECK(two.records[1].branch == 1);
  CHECK(two.records[2].branch == 0);
  CHECK(two.records[3].branch == 1);
  for (const SweepRecord& rec : two.records) {
    CHECK(rec.converged);
    CHECK(std::isfinite(rec.weak_residual));
    CHECK(rec.weak_residual < 1e-4);
  }
  // minimal branch grows with lambda, stays below the upper branch
  CHECK(two.records[0].a_star < two.records[2].a_star);
  CHECK(two.records[2].a_star < two.records[3].a_star);
  CHECK(two.lambda_max_existence == 0.05);

  const LambdaSweepResult serial = lambda_sweep(base, lambdas, {}, {}, 1);
  CHECK(sweep_to_csv(serial) == sweep_to_csv(two));
}

TEST_CASE("existence probe matches the closed-form threshold") {
  ProblemParams base = reference_problem();
  base.eps = 1e-3;
  const MuProbeResult probe = mu_probe(base, {0.0, 10.0, 100.0});
  REQUIRE(probe.rows.size() == 3);
  const double pi = 3.14159265358979323846;
  CHECK(probe.lambda1 == doctest::Approx(pi * pi).epsilon(1e-6));

  CHECK(probe.rows[0].k == 0.0);
  CHECK(probe.rows[1].k == doctest::Approx(2.5649639200150456).epsilon(1e-12));
  CHECK(probe.rows[2].k == doctest::Approx(11.905507889761497).epsilon(1e-12));

  CHECK(probe.rows[0].exists);
  CHECK(probe.rows[1].exists);
  CHECK_FALSE(probe.rows[2].exists);
  CHECK(probe.all_consistent);
}

}  // TEST_SUITE
