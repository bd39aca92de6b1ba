// Copyright 2026 The ebicert authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * The command-line pipeline: a flat run configuration (config file keys and
 * flags carry the same names, flags win), one execute() producing the report
 * text, and run() writing it atomically.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ebicert::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Command { Certify, Sweep, Bruteforce, Seesaw, Sample };

Command parse_command(const std::string &name); // throws ConfigError

struct RunConfig {
    Command command = Command::Certify;
    // builtin-reference | counts:<path> | werner | classical[:<knowledge>]
    std::string source = "builtin-reference";
    double visibility = 1.0;   // werner source parameter
    std::int64_t shots = 0;    // > 0 samples finite statistics (certify/sample)
    std::uint64_t seed = 0;
    // Negative tolerance = unset: exact defaults, or the 3/sqrt(shots)
    // heuristic when the behavior is estimated.
    double s_tol = -1.0;
    double uniform_tol = -1.0;
    double det_tol = -1.0;
    double rank_tol = -1.0;
    int jobs = 1;
    std::string out;           // empty = stdout
    int max_rounds = 10000;    // seesaw
    double convergence_eps = 1e-12;
};

/// Flat key = value file; '#' starts a comment. Unknown keys are errors.
RunConfig parse_config_file(const std::string &path, const RunConfig &defaults = {});

/// Applies one key/value onto cfg; shared by the config parser and the flag
/// layer. Throws ConfigError naming the field.
void apply_setting(RunConfig &cfg, const std::string &key, const std::string &value);

void validate_config(const RunConfig &cfg);

/// Runs the configured command and returns the full report text (counts text
/// for the sample command). Throws ConfigError / report::IoError.
std::string execute(const RunConfig &cfg);

/// execute() + atomic write to cfg.out (stdout when empty). Returns the
/// process exit status: 0 on any successful computation, 2 for configuration
/// errors, 3 for I/O errors.
int run(const RunConfig &cfg);

} // namespace ebicert::cli
