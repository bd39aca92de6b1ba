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

#include "ebicert/runconfig.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ebicert/adversary.hpp"
#include "ebicert/ebi.hpp"
#include "ebicert/optimizer.hpp"
#include "ebicert/report.hpp"

namespace ebicert::cli {

namespace {

std::string trim(const std::string &s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string &key, const std::string &value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception &) {
        throw ConfigError(key + ": cannot parse number '" + value + "'");
    }
}

std::int64_t parse_integer(const std::string &key, const std::string &value) {
    try {
        size_t pos = 0;
        const std::int64_t v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception &) {
        throw ConfigError(key + ": cannot parse integer '" + value + "'");
    }
}

struct SourceSpec {
    enum class Kind { BuiltinReference, CountsFile, Werner, Classical } kind;
    std::string path;
    double knowledge = 1.0;
};

SourceSpec parse_source(const RunConfig &cfg) {
    const std::string &s = cfg.source;
    if (s == "builtin-reference") return {SourceSpec::Kind::BuiltinReference, "", 1.0};
    if (s == "werner") return {SourceSpec::Kind::Werner, "", 1.0};
    if (s.rfind("counts:", 0) == 0) {
        const std::string path = s.substr(7);
        if (path.empty()) throw ConfigError("source: counts path is empty");
        return {SourceSpec::Kind::CountsFile, path, 1.0};
    }
    if (s == "classical") return {SourceSpec::Kind::Classical, "", 1.0};
    if (s.rfind("classical:", 0) == 0) {
        const double k = parse_number("source", s.substr(10));
        if (k < 0.0 || k > 1.0) throw ConfigError("source: classical knowledge must be in [0, 1]");
        return {SourceSpec::Kind::Classical, "", k};
    }
    throw ConfigError("source: unknown source '" + s + "'");
}

scenario::Behavior load_counts_behavior(const std::string &path, std::int64_t &shots_out) {
    std::ifstream in(path);
    if (!in) throw report::IoError("cannot open counts file " + path);
    scenario::CountRecord rec;
    try {
        rec = scenario::parse_counts(in);
    } catch (const scenario::CountsParseError &e) {
        throw ConfigError(std::string("source: ") + e.what());
    }
    shots_out = rec.shots_per_pair;
    return scenario::estimate(rec);
}

certifier::CertTolerances resolve_tolerances(const RunConfig &cfg, std::int64_t shots_estimated) {
    certifier::CertTolerances tol = shots_estimated > 0
                                        ? certifier::CertTolerances::for_shots(shots_estimated)
                                        : certifier::CertTolerances::exact();
    if (cfg.s_tol >= 0.0) tol.s_tol = cfg.s_tol;
    if (cfg.uniform_tol >= 0.0) tol.uniform_tol = cfg.uniform_tol;
    if (cfg.det_tol >= 0.0) {
        tol.extremality.det_zero = cfg.det_tol;
        tol.extremality.completeness_tol = cfg.det_tol;
    }
    if (cfg.rank_tol >= 0.0) tol.extremality.rank_min = cfg.rank_tol;
    return tol;
}

std::string run_certify(const RunConfig &cfg) {
    const SourceSpec src = parse_source(cfg);
    scenario::Behavior behavior;
    std::int64_t estimated_shots = 0;

    switch (src.kind) {
    case SourceSpec::Kind::BuiltinReference:
        if (cfg.shots > 0) {
            const auto rec = scenario::sample(ebi::reference_strategy(), cfg.shots, cfg.seed);
            behavior = scenario::estimate(rec);
            estimated_shots = cfg.shots;
        } else {
            behavior = scenario::behavior_of(ebi::reference_strategy());
        }
        break;
    case SourceSpec::Kind::CountsFile:
        behavior = load_counts_behavior(src.path, estimated_shots);
        break;
    case SourceSpec::Kind::Werner:
        behavior = ebi::werner_behavior(cfg.visibility);
        break;
    case SourceSpec::Kind::Classical:
        behavior =
            adversary::classical_guess_prob(adversary::classical_four_lambda_attack(src.knowledge))
                .behavior;
        break;
    }

    const auto tol = resolve_tolerances(cfg, estimated_shots);
    const auto verdict = certifier::certify(behavior, tol);

    report::ReportBuilder rb("certify");
    rb.add("schema", "ebicert/certify/v1");
    rb.add("source", cfg.source);
    if (src.kind == SourceSpec::Kind::Werner) rb.add("visibility", cfg.visibility);
    rb.add("estimated", behavior.estimated);
    if (estimated_shots > 0) rb.add("shots_per_pair", estimated_shots);
    if (cfg.shots > 0 && src.kind == SourceSpec::Kind::BuiltinReference)
        rb.add("seed", static_cast<std::int64_t>(cfg.seed));
    report::add_verdict_fields(rb, verdict);
    return rb.full();
}

std::string run_sweep(const RunConfig &cfg) {
    const auto tol = resolve_tolerances(cfg, 0);
    const auto rows = adversary::default_attack_sweep(tol, cfg.jobs);

    int violations = 0;
    int failures = 0;
    for (const auto &row : rows) {
        if (!row.error.empty()) {
            ++failures;
            continue;
        }
        if (row.test1 && row.test2 && row.g_upper > 0.25 + 1e-9) ++violations;
    }

    report::ReportBuilder rb("sweep");
    rb.add("schema", "ebicert/sweep/v1");
    rb.add("rows", static_cast<std::int64_t>(rows.size()));
    rb.add("families", "werner classical-four-lambda partial-correlation");
    rb.add("row_errors", failures);
    rb.add("theorem_violations", violations);
    report::add_sweep_table(rb, rows);
    return rb.full();
}

std::string run_bruteforce() {
    const auto result = ebi::classical_max_bruteforce();
    report::ReportBuilder rb("bruteforce");
    rb.add("schema", "ebicert/bruteforce/v1");
    rb.add("assignments_checked", 128);
    rb.add("classical_max", result.value);
    auto sign_list = [](const auto &arr) {
        std::string s;
        for (size_t i = 0; i < arr.size(); ++i) {
            if (i) s += ' ';
            s += arr[i] > 0 ? "+1" : "-1";
        }
        return s;
    };
    rb.add("argmax_alice", sign_list(result.argmax.alice));
    rb.add("argmax_bob", sign_list(result.argmax.bob));
    return rb.full();
}

std::string run_seesaw(const RunConfig &cfg) {
    optimizer::SeesawConfig scfg;
    scfg.max_rounds = cfg.max_rounds;
    scfg.convergence_eps = cfg.convergence_eps;
    scfg.seed = cfg.seed;
    const auto result = optimizer::seesaw_maximize(scfg);

    report::ReportBuilder rb("seesaw");
    rb.add("schema", "ebicert/seesaw/v1");
    rb.add("seed", static_cast<std::int64_t>(cfg.seed));
    rb.add("rounds", static_cast<std::int64_t>(result.round_values.size()));
    rb.add("converged", result.converged);
    rb.add("s_value", result.s_value);
    rb.add("gap_to_quantum_max", ebi::kQuantumMax - result.s_value);
    const auto verdict =
        certifier::certify(scenario::behavior_of(result.strategy), resolve_tolerances(cfg, 0));
    report::add_verdict_fields(rb, verdict);
    rb.table_header({"round", "s_value"});
    for (size_t i = 0; i < result.round_values.size(); ++i) {
        rb.table_row({std::to_string(i + 1), report::format_double(result.round_values[i])});
    }
    return rb.full();
}

std::string run_sample(const RunConfig &cfg) {
    const SourceSpec src = parse_source(cfg);
    if (src.kind != SourceSpec::Kind::BuiltinReference) {
        throw ConfigError("source: the sample command draws from builtin-reference only");
    }
    if (cfg.shots < 1) throw ConfigError("shots: must be >= 1 for the sample command");
    const auto rec = scenario::sample(ebi::reference_strategy(), cfg.shots, cfg.seed);
    return scenario::serialize_counts(rec);
}

} // namespace

Command parse_command(const std::string &name) {
    if (name == "certify") return Command::Certify;
    if (name == "sweep") return Command::Sweep;
    if (name == "bruteforce") return Command::Bruteforce;
    if (name == "seesaw") return Command::Seesaw;
    if (name == "sample") return Command::Sample;
    throw ConfigError("command: unknown command '" + name + "'");
}

void apply_setting(RunConfig &cfg, const std::string &key, const std::string &value) {
    if (key == "command") {
        cfg.command = parse_command(value);
    } else if (key == "source") {
        cfg.source = value;
    } else if (key == "v") {
        cfg.visibility = parse_number(key, value);
        if (cfg.visibility < 0.0 || cfg.visibility > 1.0) {
            throw ConfigError("v: visibility must lie in [0, 1]");
        }
    } else if (key == "shots") {
        cfg.shots = parse_integer(key, value);
        if (cfg.shots < 0) throw ConfigError("shots: must be nonnegative");
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_integer(key, value));
    } else if (key == "s-tol") {
        cfg.s_tol = parse_number(key, value);
        if (cfg.s_tol < 0.0) throw ConfigError("s-tol: must be nonnegative");
    } else if (key == "uniform-tol") {
        cfg.uniform_tol = parse_number(key, value);
        if (cfg.uniform_tol < 0.0) throw ConfigError("uniform-tol: must be nonnegative");
    } else if (key == "det-tol") {
        cfg.det_tol = parse_number(key, value);
        if (cfg.det_tol < 0.0) throw ConfigError("det-tol: must be nonnegative");
    } else if (key == "rank-tol") {
        cfg.rank_tol = parse_number(key, value);
        if (cfg.rank_tol < 0.0) throw ConfigError("rank-tol: must be nonnegative");
    } else if (key == "jobs") {
        cfg.jobs = static_cast<int>(parse_integer(key, value));
        if (cfg.jobs < 1) throw ConfigError("jobs: must be >= 1");
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "max-rounds") {
        cfg.max_rounds = static_cast<int>(parse_integer(key, value));
        if (cfg.max_rounds < 1) throw ConfigError("max-rounds: must be >= 1");
    } else if (key == "convergence-eps") {
        cfg.convergence_eps = parse_number(key, value);
        if (!(cfg.convergence_eps > 0.0)) throw ConfigError("convergence-eps: must be > 0");
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

RunConfig parse_config_file(const std::string &path, const RunConfig &defaults) {
    std::ifstream in(path);
    if (!in) throw report::IoError("cannot open config file " + path);
    RunConfig cfg = defaults;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void validate_config(const RunConfig &cfg) {
    parse_source(cfg); // throws on malformed sources
    if (cfg.command == Command::Sample && cfg.shots < 1) {
        throw ConfigError("shots: must be >= 1 for the sample command");
    }
}

std::string execute(const RunConfig &cfg) {
    validate_config(cfg);
    switch (cfg.command) {
    case Command::Certify: return run_certify(cfg);
    case Command::Sweep: return run_sweep(cfg);
    case Command::Bruteforce: return run_bruteforce();
    case Command::Seesaw: return run_seesaw(cfg);
    case Command::Sample: return run_sample(cfg);
    }
    throw ConfigError("command: unhandled command");
}

int run(const RunConfig &cfg) {
    try {
        const std::string text = execute(cfg);
        if (cfg.out.empty()) {
            std::cout << text;
        } else {
            report::write_atomic(cfg.out, text);
        }
        return 0;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const report::IoError &e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace ebicert::cli
