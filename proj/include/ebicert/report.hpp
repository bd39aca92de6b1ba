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
 * Plain-text reports: a versioned header (the only place a timestamp may
 * appear), "key: value" lines, and an optional tab-delimited table. Bodies
 * are byte-deterministic for a fixed configuration.
 */

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ebicert/adversary.hpp"
#include "ebicert/certifier.hpp"

namespace ebicert::report {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double v);

class ReportBuilder {
  public:
    explicit ReportBuilder(std::string command) : command_(std::move(command)) {}

    void add(const std::string &key, const std::string &value);
    void add(const std::string &key, const char *value) { add(key, std::string(value)); }
    void add(const std::string &key, double value) { add(key, format_double(value)); }
    void add(const std::string &key, bool value) { add(key, std::string(value ? "true" : "false")); }
    void add(const std::string &key, std::int64_t value) { add(key, std::to_string(value)); }
    void add(const std::string &key, int value) { add(key, std::to_string(value)); }

    void table_header(const std::vector<std::string> &columns);
    void table_row(const std::vector<std::string> &cells);

    /// Everything below the header separator; deterministic.
    std::string body() const;
    /// Header (with a timestamp line) + separator + body.
    std::string full() const;

    const std::vector<std::pair<std::string, std::string>> &fields() const { return fields_; }

  private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> fields_;
    std::vector<std::string> table_lines_;
};

/// The stable field set of a certification verdict.
void add_verdict_fields(ReportBuilder &rb, const certifier::CertificationVerdict &v);

/// Appends the sweep table: family, parameter, S, uniformity residual,
/// extremal flag, both test flags, G bounds, and a per-row error column.
void add_sweep_table(ReportBuilder &rb, const std::vector<adversary::SweepRow> &rows);

/// Temp file in the target directory, then rename.
void write_atomic(const std::string &path, const std::string &content);

} // namespace ebicert::report
