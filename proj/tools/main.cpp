#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "plap/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Shooting solver and verification harness for the singular "
      "p-Laplace Dirichlet problem on a ball"};
  app.require_subcommand(0, 1);

  std::string config_path, out_dir;
  int threads = 0;
  bool print_defaults = false;
  app.add_option("--config", config_path,
                 "configuration file (built-in defaults when omitted)");
  app.add_option("--out", out_dir, "output directory (overrides [output])");
  app.add_option("--threads", threads, "worker threads (overrides [run])");
  app.add_flag("--print-defaults", print_defaults,
               "print the built-in configuration and exit");

  auto* solve =
      app.add_subcommand("solve", "solve the minimal branch and verify it");
  auto* sweep =
      app.add_subcommand("sweep", "solve all branches across [sweep] lambdas");
  auto* cont = app.add_subcommand(
      "continue", "follow the regularization path down to the limit");
  auto* eigen =
      app.add_subcommand("eigen", "first eigenvalue and eigenfunction");
  auto* verify =
      app.add_subcommand("verify", "re-check a stored profile.csv");
  auto* blowup =
      app.add_subcommand("blowup", "rescale a large-amplitude family");
  std::string profile_path;
  verify->add_option("profile", profile_path, "profile.csv to check")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : plap::kExitConfigError;
  }

  try {
    if (print_defaults) {
      std::fputs(plap::default_config_text().c_str(), stdout);
      return plap::kExitOk;
    }
    plap::RunConfig cfg =
        config_path.empty()
            ? plap::parse_config(plap::default_config_text())
            : plap::load_config(config_path);
    if (threads > 0) cfg.threads = threads;
    const std::string dir = out_dir.empty() ? cfg.output_dir : out_dir;

    if (solve->parsed()) return plap::cmd_solve(cfg, dir);
    if (sweep->parsed()) return plap::cmd_sweep(cfg, dir);
    if (cont->parsed()) return plap::cmd_continue(cfg, dir);
    if (eigen->parsed()) return plap::cmd_eigen(cfg, dir);
    if (verify->parsed()) return plap::cmd_verify(cfg, profile_path, dir);
    if (blowup->parsed()) return plap::cmd_blowup(cfg, dir);

    std::fputs(app.help().c_str(), stdout);
    return plap::kExitOk;
  } catch (const plap::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return plap::kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return plap::kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return plap::kExitInternal;
  }
}
