// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qnls/bubbles.hpp"
#include "qnls/constants.hpp"
#include "qnls/grid.hpp"
#include "qnls/params.hpp"
#include "qnls/solvers.hpp"
#include "qnls/verify.hpp"

namespace qnls::io {

/// Insertion-ordered so that dumps are stable.
using Json = nlohmann::ordered_json;

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

// Non-finite numbers are written as null and read back as +inf.
Json number(double x);
double number_from(const Json& j);

Json to_json(const ProblemParams& p);
Json to_json(const GridSpec& g);
Json to_json(const SolveConfig& c);
Json to_json(const SolveReport& r, bool with_profile = true);
Json to_json(const ThresholdSet& t);
Json to_json(const EstimateTable& t);
Json to_json(const PathBound& b);
Json to_json(const NonexistenceCertificate& c);
Json to_json(const VerificationRecord& v);

/// Strict readers: unknown keys and wrong types throw std::invalid_argument;
/// missing keys keep the defaults of `base`.
ProblemParams params_from_json(const Json& j, ProblemParams base = {});
GridSpec grid_from_json(const Json& j, GridSpec base = {});
SolveConfig solve_config_from_json(const Json& j, SolveConfig base = {});

/// Rebuilds a report written by to_json (profile included).
SolveReport report_from_json(const Json& j);

/// CSV writers. Each file starts with a comment line carrying the config
/// hash and the artifact version, then a header row.
std::string csv_preamble(const std::string& config_hash);
std::string profile_csv(const SolveReport& r, const std::string& config_hash);
std::string trace_csv(const SolveReport& r, const std::string& config_hash);
std::string verification_csv(const std::vector<VerificationRecord>& v, const std::string& config_hash);
std::string path_csv(const PathBound& b, const std::string& config_hash);

/// Artifact version string.
std::string version();

}  // namespace qnls::io
