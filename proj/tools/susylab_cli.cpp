#include "susylab/cli/commands.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <utility>

int main(int argc, char** argv) {
  CLI::App app{"susylab: supersymmetric operator experiments"};
  app.require_subcommand(1);
  susylab::cli::RunOptions opts;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Override every seed in the config");
  app.add_option("--config", opts.config_path, "Experiment config (INI)");
  app.add_option("--out", opts.out_dir, "Output directory (default ./out)");
  app.add_option("--threads", opts.threads, "OpenMP threads")->check(CLI::NonNegativeNumber);
  app.fallthrough();
  const std::pair<const char*, const char*> commands[] = {
      {"analyze-potential", "Critical points, Morse indices and barriers"},
      {"spectrum", "Low-lying eigenvalues, disc counts and projector norms"},
      {"splitting", "Arrhenius fit of the small eigenvalue over an h sweep"},
      {"evolve", "Semigroup evolution and remainder decay"},
      {"sde", "Euler-Maruyama ensemble, invariant law and transition times"},
      {"check-hypotheses", "Sampled checks of the dynamical hypotheses"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  opts.command = app.get_subcommands().front()->get_name();
  if (*seed_opt) opts.seed = seed;
  return susylab::cli::run(opts);
}
