// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace qnls::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;

/// Names of every subcommand, in help order.
const std::vector<std::string>& subcommands();

struct Outcome {
  int exit_code = kExitOk;
  std::vector<std::string> files;  ///< artifacts written, in write order
  std::string summary;             ///< human-readable lines for stdout
};

/// Runs one subcommand on a parsed configuration and writes its artifacts
/// under cfg.out_dir. std::invalid_argument signals a validation problem;
/// other exceptions are solver failures.
Outcome run_subcommand(const std::string& name, const RunConfig& cfg);

/// Full command line: parsing, configuration layering (file, environment,
/// flags) and exit-code mapping.
int run(int argc, char** argv);

}  // namespace qnls::app
