#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace vekua::cli;

  CLI::App app{"Pseudoanalytic formal powers, Dirichlet collocation and factorization checks"};
  app.require_subcommand(1);

  std::string config_path;
  RunOptions run;
  std::string out_dir = ".";
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> overrides;

  auto* config_opt = app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir, "output directory (created if missing)");
  auto* seed_opt = app.add_option("--seed", seed, "seed for the verification suites");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--tol-override", overrides, "KEY=VAL tolerance override (repeatable)");
  app.fallthrough();

  auto* powers = app.add_subcommand("powers", "tabulate formal powers on a grid");
  auto* solve = app.add_subcommand("solve", "Dirichlet problem by boundary collocation");
  auto* conjugate = app.add_subcommand("conjugate", "conjugate solution and round trip");
  auto* verify = app.add_subcommand("verify", "2D invariant suites");
  auto* verify3d = app.add_subcommand("verify3d", "3D invariant suites");

  CLI11_PARSE(app, argc, argv);

  try {
    run.out_dir = out_dir;
    run.threads = threads;
    if (*seed_opt) run.seed = seed;

    Config cfg;
    if (*config_opt) {
      cfg = load_config(config_path);
    } else if (!verify3d->parsed()) {
      throw vekua::ConfigError("--config is required for this command");
    }
    for (const auto& o : overrides) apply_override(cfg, o);

    if (powers->parsed()) return cmd_powers(cfg, run, std::cout);
    if (solve->parsed()) return cmd_solve(cfg, run, std::cout);
    if (conjugate->parsed()) return cmd_conjugate(cfg, run, std::cout);
    if (verify->parsed()) return cmd_verify(cfg, run, std::cout);
    if (verify3d->parsed()) return cmd_verify3d(cfg, run, std::cout);
  } catch (const vekua::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
