// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qnls/bubbles.hpp"
#include "qnls/corpus.hpp"
#include "qnls/grid.hpp"
#include "qnls/params.hpp"
#include "qnls/report_io.hpp"
#include "qnls/solvers.hpp"

namespace qnls::app {

using io::Json;

/// Values swept by `sweep`; an empty axis keeps the base value.
struct SweepAxes {
  std::vector<double> mass, tau, q, mu;
  bool empty() const noexcept { return mass.empty() && tau.empty() && q.empty() && mu.empty(); }
};

struct BubbleRun {
  BubbleKind kind = BubbleKind::Cutoff;
  std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5};
  EstimateOptions options;
};

struct PathRun {
  PathFamily family = PathFamily::DilatedTruncated;
  PathOptions options;
};

struct RunConfig {
  ProblemParams problem;
  /// When set, problem.mass is this multiple of c0 (resolved at parse time).
  double mass_over_c0 = 0.0;
  GridSpec grid;
  SolveConfig solve;
  SweepAxes sweep;
  BubbleRun bubbles;
  PathRun path;
  CorpusSpec corpus;
  std::string report;  ///< input report for `verify`
  std::string out_dir = "qnls-out";
  std::uint64_t seed = 20240601;
  int jobs = 1;

  /// Everything ProblemParams, GridSpec and SolveConfig check, plus the
  /// grid and problem dimensions agreeing.
  void validate() const;
};

/// Reads JSON that may contain // and /* */ comments.
Json load_config_text(const std::string& text);
Json load_config_file(const std::string& path);

/// Environment overrides: QNLS_SECTION__KEY=value sets section.key. Values
/// parse as JSON when they can (numbers, arrays, true/false), otherwise they
/// are taken as strings. Keys are lower-cased.
void apply_env_overrides(Json& j, const std::vector<std::pair<std::string, std::string>>& env);
/// The QNLS_* entries of the process environment.
std::vector<std::pair<std::string, std::string>> qnls_environment();

/// Strict parse: unknown keys and out-of-range values throw std::invalid_argument.
RunConfig parse_run_config(const Json& j);

/// Canonical form of a resolved configuration (output directory and job
/// count excluded, since they do not change results).
Json canonical_json(const RunConfig& c);

/// First 12 hex digits of SHA-256 over the canonical JSON and the subcommand.
std::string config_hash(const RunConfig& c, const std::string& subcommand);

}  // namespace qnls::app
