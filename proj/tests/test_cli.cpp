#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "plap/commands.hpp"
#include "plap/csv.hpp"
#include "plap/svg.hpp"

using namespace plap;
namespace fs = std::filesystem;

namespace {

std::string fresh_dir(const std::string& name) {
  const fs::path dir = fs::path("cli_test_out") / name;
  fs::remove_all(dir);
  return dir.string();
}

RunConfig constant_run_config() {
  RunConfig cfg;
  cfg.problem.mode = ForcingMode::constant_rhs;
  cfg.problem.constant_c = 6.0;
  return cfg;  // p = 2, N = 3, R = 1: solution u = 1 - r^2
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("default configuration text parses to the documented run") {
  const RunConfig cfg = parse_config(default_config_text());
  CHECK(cfg.problem.lambda == 0.05);
  CHECK(cfg.problem.mode == ForcingMode::full);
  CHECK(cfg.problem.eps == 0.0);
  CHECK(cfg.continuation.steps == 12);
  CHECK(cfg.continuation.scan.points == cfg.scan.points);
  CHECK(cfg.verify_test_count == 8);
  CHECK(cfg.sweep_lambdas.size() == 6);
  CHECK(cfg.mu_values.size() == 6);
  CHECK(cfg.output_dir == "out");
  CHECK_NOTHROW(cfg.problem.validate());
}

TEST_CASE("config parser reads sections, arrays and pairs") {
  const std::string text =
      "# reference setup\n"
      "[problem]\n"
      "p = 2.0\n"
      "lambda = 0.25   # trailing comment\n"
      "f = [[0.5, 2], [1, 3]]\n"
      "mode = \"full\"\n"
      "[continue]\n"
      "steps = 4\n"
      "eps0 = 0.05\n"
      "[scan]\n"
      "points = 32\n"
      "[sweep]\n"
      "lambdas = [0.1, 0.2]\n"
      "[output]\n"
      "dir = \"artifacts\"\n"
      "[run]\n"
      "threads = 2\n";
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.problem.lambda == 0.25);
  REQUIRE(cfg.problem.f.monomials.size() == 2);
  CHECK(cfg.problem.f.monomials[0].alpha == 0.5);
  CHECK(cfg.problem.f.monomials[0].s == 2.0);
  CHECK(cfg.problem.f.monomials[1].alpha == 1.0);
  CHECK(cfg.problem.f.monomials[1].s == 3.0);
  CHECK(cfg.continuation.steps == 4);
  CHECK(cfg.continuation.eps0 == 0.05);
  CHECK(cfg.scan.points == 32);
  CHECK(cfg.continuation.scan.points == 32);  // scan feeds the fallback
  REQUIRE(cfg.sweep_lambdas.size() == 2);
  CHECK(cfg.sweep_lambdas[1] == 0.2);
  CHECK(cfg.output_dir == "artifacts");
  CHECK(cfg.threads == 2);
}

TEST_CASE("config parser reports the offending line") {
  try {
    (void)parse_config("[problem]\np = 2.0\nwavelength = 3\n");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS((void)parse_config("[nope]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("[problem]\np = fast\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("[problem]\nmode = bogus\n"),
                  ConfigError);
  CHECK_THROWS_AS((void)parse_config("p = 2.0\n"), ConfigError);  // no section
}

TEST_CASE("seventeen digit formatting round-trips doubles") {
  for (const double x : {0.1 + 0.2, 1.0 / 3.0, 3.14159265358979323846,
                         1e-300, 4.7e17, -2.5e-8}) {
    const std::string s = fmt17(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(std::signbit(std::strtod(fmt17(-0.0).c_str(), nullptr)));
}

TEST_CASE("profile csv round trip is exact") {
  const RunConfig cfg = constant_run_config();
  const RadialProfile prof = integrate_profile(1.0, cfg.problem);
  const std::string text = profile_to_csv(prof);
  CHECK(text.rfind("r,u,du\n", 0) == 0);
  const RadialProfile back = profile_from_csv(text, cfg.problem);
  REQUIRE(back.size() == prof.size());
  CHECK(back.r == prof.r);
  CHECK(back.u == prof.u);
  CHECK(back.du == prof.du);
  CHECK(back.terminated == Termination::reached_r);
  CHECK(back.center_value == prof.center_value);

  CHECK_THROWS_AS((void)profile_from_csv("x,y\n1,2\n", cfg.problem),
                  std::runtime_error);
  CHECK_THROWS_AS((void)profile_from_csv("r,u,du\n0,1,0\n", cfg.problem),
                  std::runtime_error);
  CHECK_THROWS_AS(
      (void)profile_from_csv("r,u,du\n0,1,0\n0,1,0\n", cfg.problem),
      std::runtime_error);
}

TEST_CASE("svg plot emits polylines and splits at gaps") {
  SvgSeries s;
  s.label = "branch <1>";
  s.x = {0.0, 1.0, 2.0, 3.0};
  s.y = {0.0, 1.0, std::nan(""), 2.0};
  const std::string svg = svg_line_plot("title", "x", "y", {s});
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("branch &lt;1&gt;") != std::string::npos);
}

TEST_CASE("solve command writes artifacts and is deterministic") {
  const RunConfig cfg = constant_run_config();
  const std::string dir_a = fresh_dir("solve_a");
  const std::string dir_b = fresh_dir("solve_b");
  CHECK(cmd_solve(cfg, dir_a) == kExitOk);
  CHECK(cmd_solve(cfg, dir_b) == kExitOk);
  for (const char* name : {"scan.csv", "profile.csv", "profile.svg",
                           "report.json"}) {
    CAPTURE(name);
    CHECK(fs::exists(fs::path(dir_a) / name));
    CHECK(read_file((fs::path(dir_a) / name).string()) ==
          read_file((fs::path(dir_b) / name).string()));
  }
  const std::string report =
      read_file((fs::path(dir_a) / "report.json").string());
  CHECK(report.find("\"overall\": true") != std::string::npos);
}

TEST_CASE("solve command reports nonexistence honestly") {
  RunConfig cfg;
  cfg.problem.lambda = 0.05;
  cfg.problem.mu = 100.0;  // threshold sits above the principal frequency
  const std::string dir = fresh_dir("solve_none");
  CHECK(cmd_solve(cfg, dir) == kExitNoSolution);
  CHECK(fs::exists(fs::path(dir) / "scan.csv"));
  CHECK_FALSE(fs::exists(fs::path(dir) / "profile.csv"));
}

TEST_CASE("verify command reproduces the solve report byte for byte") {
  const RunConfig cfg = constant_run_config();
  const std::string dir_s = fresh_dir("verify_src");
  REQUIRE(cmd_solve(cfg, dir_s) == kExitOk);
  const std::string dir_v = fresh_dir("verify_dst");
  const std::string profile = (fs::path(dir_s) / "profile.csv").string();
  CHECK(cmd_verify(cfg, profile, dir_v) == kExitOk);
  CHECK(read_file((fs::path(dir_v) / "report.json").string()) ==
        read_file((fs::path(dir_s) / "report.json").string()));
}

TEST_CASE("sweep command validates its grid") {
  RunConfig cfg;
  cfg.problem.lambda = 0.05;
  cfg.sweep_lambdas = {0.2, 0.1};  // not increasing
  CHECK(cmd_sweep(cfg, fresh_dir("sweep_bad")) == kExitConfigError);
  cfg.sweep_lambdas = {-0.1, 0.2};
  CHECK(cmd_sweep(cfg, fresh_dir("sweep_neg")) == kExitConfigError);
}

TEST_CASE("continue command flags an unconverged tail") {
  RunConfig cfg;
  cfg.problem.lambda = 0.05;
  cfg.continuation.steps = 4;  // far from the Cauchy tolerance
  const std::string dir = fresh_dir("continue_short");
  CHECK(cmd_continue(cfg, dir) == kExitVerifyFailed);
  const std::string path = read_file((fs::path(dir) / "eps_path.csv").string());
  CHECK(path.rfind("eps,a_star,sup_norm,cauchy_increment\n", 0) == 0);
  // header plus one row per completed step
  CHECK(std::count(path.begin(), path.end(), '\n') == 5);
}

TEST_CASE("eigen command writes the eigenpair") {
  RunConfig cfg;
  cfg.problem.lambda = 0.05;
  const std::string dir = fresh_dir("eigen");
  CHECK(cmd_eigen(cfg, dir) == kExitOk);
  const std::string csv = read_file((fs::path(dir) / "eigen.csv").string());
  CHECK(csv.rfind("lambda1,", 0) == 0);
  CHECK(fs::exists(fs::path(dir) / "eigen.svg"));
}

TEST_CASE("blowup command checks the amplitude ladder") {
  RunConfig cfg;
  cfg.problem.lambda = 0.05;
  cfg.blowup_amplitudes = {10.0, 100.0};
  const std::string dir = fresh_dir("blowup");
  CHECK(cmd_blowup(cfg, dir) == kExitOk);
  const std::string csv = read_file((fs::path(dir) / "blowup.csv").string());
  CHECK(csv.find("residual_lambda_free") != std::string::npos);
  CHECK(fs::exists(fs::path(dir) / "rescaled.svg"));

  cfg.blowup_amplitudes = {100.0, 10.0};
  CHECK(cmd_blowup(cfg, fresh_dir("blowup_bad")) == kExitConfigError);
}

}  // TEST_SUITE
