#pragma once

#include "susylab/cli/config.hpp"
#include "susylab/cli/output.hpp"
#include "susylab/susy/susy.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace susylab::cli {

struct CommandResult {
  std::vector<std::string> files;
  Json summary;
};

/// The operator family described by [model].
susy::SusySpec build_spec(const ExperimentConfig& config);

CommandResult cmd_analyze_potential(const ExperimentConfig& config, const std::filesystem::path& out);
CommandResult cmd_spectrum(const ExperimentConfig& config, const std::filesystem::path& out);
CommandResult cmd_splitting(const ExperimentConfig& config, const std::filesystem::path& out);
CommandResult cmd_evolve(const ExperimentConfig& config, const std::filesystem::path& out);
CommandResult cmd_sde(const ExperimentConfig& config, const std::filesystem::path& out);
CommandResult cmd_check_hypotheses(const ExperimentConfig& config, const std::filesystem::path& out);

/// 2 for validation problems, 3 for numerical failures.
int exit_code_for(ErrorKind kind);

struct RunOptions {
  std::string command;
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

/// Load, validate, dispatch, and write metadata.json or error.json.
/// Returns the process exit code.
int run(const RunOptions& options);

}  // namespace susylab::cli
