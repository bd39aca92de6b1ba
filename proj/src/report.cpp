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

#include "ebicert/report.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace ebicert::report {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ReportBuilder::add(const std::string &key, const std::string &value) {
    fields_.emplace_back(key, value);
}

void ReportBuilder::table_header(const std::vector<std::string> &columns) {
    std::string line;
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) line += '\t';
        line += columns[i];
    }
    table_lines_.push_back(std::move(line));
}

void ReportBuilder::table_row(const std::vector<std::string> &cells) { table_header(cells); }

std::string ReportBuilder::body() const {
    std::ostringstream out;
    for (const auto &[key, value] : fields_) out << key << ": " << value << "\n";
    if (!table_lines_.empty()) {
        out << "\n";
        for (const auto &line : table_lines_) out << line << "\n";
    }
    return out.str();
}

std::string ReportBuilder::full() const {
    char stamp[64] = "unknown";
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    if (gmtime_r(&now, &tm_utc) != nullptr) {
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    }
    std::ostringstream out;
    out << "ebicert-report v1\n";
    out << "command: " << command_ << "\n";
    out << "generated: " << stamp << "\n";
    out << "---\n";
    out << body();
    return out.str();
}

void add_verdict_fields(ReportBuilder &rb, const certifier::CertificationVerdict &v) {
    rb.add("s_value", v.s_value);
    rb.add("s_tolerance", v.s_tol);
    rb.add("test1_pass", v.test1_pass);
    rb.add("uniformity_residual", v.uniformity_residual);
    rb.add("uniform_tolerance", v.uniform_tol);
    for (int a = 0; a < 4; ++a) {
        const auto &oc = v.extremality.outcomes[a];
        const std::string p = "outcome_" + std::to_string(a + 1) + ".";
        rb.add(p + "trace_value", oc.trace_value);
        rb.add(p + "trace_ok", oc.trace_ok);
        rb.add(p + "det_value", oc.det_value);
        rb.add(p + "det_identity_residual", oc.det_identity_residual);
        rb.add(p + "det_ok", oc.det_ok);
        rb.add(p + "min_eigenvalue", oc.min_eigenvalue);
        rb.add(p + "positive_ok", oc.positive_ok);
    }
    for (int i = 0; i < 3; ++i)
        rb.add("rank_sigma_" + std::to_string(i + 1), v.extremality.rank_singular_values[i]);
    rb.add("rank_ok", v.extremality.rank_ok);
    rb.add("completeness_residual", v.extremality.completeness_residual);
    rb.add("complete_ok", v.extremality.complete_ok);
    rb.add("extremal", v.extremality.extremal);
    rb.add("test2_pass", v.test2_pass);
    rb.add("certified_bits", v.certified_bits);
    rb.add("guessing_bound", v.guessing_bound);
}

void add_sweep_table(ReportBuilder &rb, const std::vector<adversary::SweepRow> &rows) {
    rb.table_header({"family", "parameter", "s_value", "uniformity_residual", "extremal", "test1",
                     "test2", "g_lower", "g_upper", "error"});
    for (const auto &row : rows) {
        rb.table_row({row.family, format_double(row.parameter), format_double(row.s_value),
                      format_double(row.uniformity_residual), row.extremal ? "true" : "false",
                      row.test1 ? "true" : "false", row.test2 ? "true" : "false",
                      format_double(row.g_lower), format_double(row.g_upper),
                      row.error.empty() ? "-" : row.error});
    }
}

void write_atomic(const std::string &path, const std::string &content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("failed writing " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("failed to move " + tmp + " into place");
    }
}

} // namespace ebicert::report
