#include "plap/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>

#include "plap/csv.hpp"
#include "plap/svg.hpp"
#include "plap/verify.hpp"

namespace plap {
namespace {

void ensure_dir(const std::string& dir) {
  std::filesystem::create_directories(dir);
}

std::string path_join(const std::string& dir, const char* name) {
  return dir + "/" + name;
}

void print_checks(const VerificationReport& rep) {
  for (const auto& c : rep.checks)
    std::printf("  [%s] %s\n", c.pass ? " ok " : "FAIL", c.name.c_str());
}

SvgSeries profile_series(const RadialProfile& prof, std::string label) {
  return {std::move(label), prof.r, prof.u};
}

}  // namespace

int cmd_solve(const RunConfig& cfg, const std::string& out_dir) {
  const ProblemParams& prm = cfg.problem;
  prm.validate();
  ensure_dir(out_dir);

  const BracketScan scan = bracket_scan(prm, cfg.scan.a_min, cfg.scan.a_max,
                                        cfg.scan.points, cfg.integrator);
  write_file(path_join(out_dir, "scan.csv"), scan_to_csv(scan));
  if (scan.brackets.empty()) {
    std::printf("no shooting bracket in [%g, %g]; scan written to %s\n",
                cfg.scan.a_min, cfg.scan.a_max, out_dir.c_str());
    return kExitNoSolution;
  }

  ShotResult sol;
  try {
    sol = solve_bvp(prm, scan.brackets.front(), cfg.integrator);
  } catch (const BvpError& err) {
    std::printf("solver stalled: %s (best a = %.12g, miss = %.3g)\n",
                err.what(), err.best.a, err.best.miss);
    return kExitNoSolution;
  }

  write_file(path_join(out_dir, "profile.csv"), profile_to_csv(sol.profile));
  write_file(path_join(out_dir, "profile.svg"),
             svg_line_plot("solved profile", "r", "u",
                           {profile_series(sol.profile, "u(r)")}));

  const VerificationReport rep =
      standard_report(sol.profile, prm, nullptr, cfg.verify_test_count);
  write_file(path_join(out_dir, "report.json"), report_to_json(rep));

  std::printf("a* = %.12g  sup = %.12g  u(R) = %.3g\n", sol.a,
              sol.profile.sup_norm(), sol.profile.u.back());
  print_checks(rep);
  std::printf("verification: %s\n", rep.overall() ? "pass" : "FAIL");
  return rep.overall() ? kExitOk : kExitVerifyFailed;
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_dir) {
  const auto& ls = cfg.sweep_lambdas;
  if (ls.empty()) {
    std::fprintf(stderr, "sweep: [sweep] lambdas is empty\n");
    return kExitConfigError;
  }
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (!(ls[i] >= 0.0) || (i > 0 && !(ls[i] > ls[i - 1]))) {
      std::fprintf(stderr,
                   "sweep: lambdas must be nonnegative and strictly "
                   "increasing\n");
      return kExitConfigError;
    }
  }
  cfg.problem.validate();
  ensure_dir(out_dir);

  const LambdaSweepResult res =
      lambda_sweep(cfg.problem, ls, cfg.scan, cfg.integrator, cfg.threads);
  write_file(path_join(out_dir, "bifurcation.csv"), sweep_to_csv(res));

  std::map<int, SvgSeries> branches;
  bool any_converged = false;
  for (const auto& r : res.records) {
    if (r.branch < 0) continue;
    auto& s = branches[r.branch];
    if (s.label.empty()) s.label = "branch " + std::to_string(r.branch);
    s.x.push_back(r.param_value);
    s.y.push_back(r.a_star);
    any_converged = any_converged || r.converged;
  }
  std::vector<SvgSeries> series;
  for (auto& [id, s] : branches) series.push_back(std::move(s));
  write_file(path_join(out_dir, "bifurcation.svg"),
             svg_line_plot("branch diagram", "lambda", "a*", series));

  if (!cfg.mu_values.empty()) {
    const MuProbeResult probe =
        mu_probe(cfg.problem, cfg.mu_values, cfg.scan, cfg.integrator);
    write_file(path_join(out_dir, "mu_probe.csv"), mu_probe_to_csv(probe));
    std::printf("mu probe: lambda1 = %.12g, thresholds %s\n", probe.lambda1,
                probe.all_consistent ? "consistent" : "INCONSISTENT");
    for (const auto& row : probe.rows)
      std::printf("  mu = %-8g k = %-12.6g %s\n", row.mu, row.k,
                  row.exists ? "solvable" : "no solution");
  }

  std::printf("%zu lambda values, %zu records\n", ls.size(),
              res.records.size());
  if (std::isfinite(res.lambda_max_existence))
    std::printf("largest lambda with a solution: %.12g\n",
                res.lambda_max_existence);
  else
    std::printf("no lambda in the sweep admits a solution\n");
  return any_converged ? kExitOk : kExitNoSolution;
}

int cmd_continue(const RunConfig& cfg, const std::string& out_dir) {
  cfg.problem.validate();
  ensure_dir(out_dir);

  const EpsPath path =
      eps_continuation(cfg.problem, cfg.continuation, cfg.integrator);
  write_file(path_join(out_dir, "eps_path.csv"), eps_path_to_csv(path));

  if (path.size() == 0) {
    std::printf("continuation produced no solutions: %s\n",
                path.diagnostic.c_str());
    return kExitNoSolution;
  }

  std::vector<SvgSeries> series;
  char label[48];
  for (std::size_t k = 0; k < path.size(); ++k) {
    std::snprintf(label, sizeof label, "eps=%.3g", path.eps_values[k]);
    series.push_back(profile_series(path.profiles[k], label));
  }
  write_file(path_join(out_dir, "continuation.svg"),
             svg_line_plot("regularization path", "r", "u", series));
  write_file(path_join(out_dir, "limit_profile.csv"),
             profile_to_csv(path.profiles.back()));

  const LimitResult lim = singular_limit(path, cfg.continue_tol_rel);
  std::printf("%zu/%d steps, eps down to %.3g, a* = %.12g\n", path.size(),
              cfg.continuation.steps, path.eps_values.back(),
              path.a_stars.back());
  std::printf("ordering: %s (worst gap %.3g)\n",
              path.ordering_ok ? "monotone" : "VIOLATED", path.ordering_worst);
  std::printf("tail increment %.3g vs tolerance %.3g: %s\n",
              lim.last_increment, lim.tolerance,
              lim.converged ? "converged" : "NOT converged");
  if (lim.converged)
    std::printf("boundary cone constant: %.12g\n", lim.cone_constant);
  if (!path.diagnostic.empty())
    std::printf("note: %s\n", path.diagnostic.c_str());

  const bool ok = path.complete(cfg.continuation.steps) && lim.converged &&
                  path.ordering_ok;
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_eigen(const RunConfig& cfg, const std::string& out_dir) {
  cfg.problem.validate();
  ensure_dir(out_dir);

  const EigenPair eigen = first_eigenpair(cfg.problem.p, cfg.problem.dim_n,
                                          cfg.problem.radius, cfg.integrator);
  write_file(path_join(out_dir, "eigen.csv"), eigen_to_csv(eigen));
  write_file(path_join(out_dir, "eigen.svg"),
             svg_line_plot("first eigenfunction", "r", "phi1",
                           {profile_series(eigen.phi1, "phi1(r)")}));
  std::printf("lambda1 = %.15g\n", eigen.lambda1);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& profile_csv,
               const std::string& out_dir) {
  cfg.problem.validate();
  ensure_dir(out_dir);

  const RadialProfile prof =
      profile_from_csv(read_file(profile_csv), cfg.problem);
  const VerificationReport rep =
      standard_report(prof, cfg.problem, nullptr, cfg.verify_test_count);
  write_file(path_join(out_dir, "report.json"), report_to_json(rep));

  print_checks(rep);
  std::printf("verification: %s\n", rep.overall() ? "pass" : "FAIL");
  return rep.overall() ? kExitOk : kExitVerifyFailed;
}

int cmd_blowup(const RunConfig& cfg, const std::string& out_dir) {
  const auto& amps = cfg.blowup_amplitudes;
  if (amps.size() < 2) {
    std::fprintf(stderr, "blowup: needs at least 2 amplitudes\n");
    return kExitConfigError;
  }
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (!(amps[i] > 0.0) || (i > 0 && !(amps[i] > amps[i - 1]))) {
      std::fprintf(stderr,
                   "blowup: amplitudes must be positive and strictly "
                   "increasing\n");
      return kExitConfigError;
    }
  }
  cfg.problem.validate();
  ensure_dir(out_dir);

  std::vector<RadialProfile> family;
  family.reserve(amps.size());
  for (const double a : amps)
    family.push_back(integrate_profile(a, cfg.problem, cfg.integrator));

  const BlowupResult res =
      blowup_rescale(family, cfg.problem, cfg.verify_test_count);

  std::string csv =
      cfg.blowup_lambda_free
          ? "amplitude,scale,x_end,residual,residual_lambda_free,"
            "singular_center,singular_mid,f_center\n"
          : "amplitude,scale,x_end,residual,singular_center,singular_mid,"
            "f_center\n";
  std::vector<SvgSeries> series;
  char label[48];
  for (std::size_t i = 0; i < res.family.size(); ++i) {
    const RescaledProfile& rp = res.family[i];
    csv += fmt17(rp.amplitude);
    csv += ',';
    csv += fmt17(rp.scale);
    csv += ',';
    csv += fmt17(rp.v.r.back());
    csv += ',';
    csv += fmt17(res.residual[i]);
    if (cfg.blowup_lambda_free) {
      csv += ',';
      csv += fmt17(res.residual_lambda_free[i]);
    }
    csv += ',';
    csv += fmt17(res.singular_center[i]);
    csv += ',';
    csv += fmt17(res.singular_mid[i]);
    csv += ',';
    csv += fmt17(res.f_center[i]);
    csv += '\n';

    std::snprintf(label, sizeof label, "H=%g", rp.amplitude);
    series.push_back(profile_series(rp.v, label));
    std::printf("H = %-10g residual = %-12.4g singular term = %.4g\n",
                rp.amplitude, res.residual[i], res.singular_center[i]);
  }
  write_file(path_join(out_dir, "blowup.csv"), csv);
  write_file(path_join(out_dir, "rescaled.svg"),
             svg_line_plot("rescaled family", "x", "v", series));

  std::printf("common window x <= %.6g, centers normalized: %s, residuals "
              "nonincreasing: %s\n",
              res.overlap, res.center_normalized ? "yes" : "NO",
              res.residuals_nonincreasing ? "yes" : "NO");
  return (res.center_normalized && res.residuals_nonincreasing)
             ? kExitOk
             : kExitVerifyFailed;
}

}  // namespace plap
