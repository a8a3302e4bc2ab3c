#include <benchmark/benchmark.h>

#include "plap/shooting.hpp"
#include "plap/verify.hpp"

namespace {

plap::ProblemParams reference_problem() {
  plap::ProblemParams prm;
  prm.lambda = 0.05;
  prm.eps = 1e-3;
  return prm;
}

void bm_integrate_constant(benchmark::State& state) {
  plap::ProblemParams prm;
  prm.mode = plap::ForcingMode::constant_rhs;
  prm.constant_c = 6.0;
  prm.relax_exponent_window = true;
  for (auto _ : state)
    benchmark::DoNotOptimize(plap::integrate_profile(1.5, prm));
}
BENCHMARK(bm_integrate_constant);

void bm_integrate_singular(benchmark::State& state) {
  plap::ProblemParams prm = reference_problem();
  prm.eps = 0.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(plap::integrate_profile(0.5, prm));
}
BENCHMARK(bm_integrate_singular);

void bm_first_eigenpair(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(plap::first_eigenpair(2.0, 3, 1.0));
}
BENCHMARK(bm_first_eigenpair);

void bm_solve_bvp(benchmark::State& state) {
  const plap::ProblemParams prm = reference_problem();
  const plap::BracketScan scan = plap::bracket_scan(prm);
  for (auto _ : state)
    benchmark::DoNotOptimize(plap::solve_bvp(prm, scan.brackets.front()));
}
BENCHMARK(bm_solve_bvp);

void bm_weak_residual(benchmark::State& state) {
  const plap::ProblemParams prm = reference_problem();
  const plap::BracketScan scan = plap::bracket_scan(prm);
  const plap::ShotResult sol = plap::solve_bvp(prm, scan.brackets.front());
  for (auto _ : state)
    benchmark::DoNotOptimize(plap::weak_residual(sol.profile, prm));
}
BENCHMARK(bm_weak_residual);

}  // namespace

BENCHMARK_MAIN();
