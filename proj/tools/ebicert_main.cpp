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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebicert/report.hpp"
#include "ebicert/runconfig.hpp"

int main(int argc, char **argv) {
    CLI::App app{"ebicert - randomness certification from the elegant Bell inequality"};

    std::string positional_command;
    std::string flag_command, source, out, config_path;
    double v = 0.0, s_tol = 0.0, uniform_tol = 0.0, det_tol = 0.0, rank_tol = 0.0;
    double convergence_eps = 0.0;
    std::int64_t shots = 0, seed = 0, jobs = 0, max_rounds = 0;

    app.add_option("cmd", positional_command,
                   "certify | sweep | bruteforce | seesaw | sample");
    app.add_option("--command", flag_command, "Command (overrides the positional form)");
    app.add_option("--config", config_path, "Flat key = value configuration file; flags win");
    app.add_option("--source", source,
                   "builtin-reference | counts:<path> | werner | classical[:<knowledge>]");
    auto *v_opt = app.add_option("--v", v, "Werner visibility in [0, 1]");
    auto *shots_opt = app.add_option("--shots", shots, "Shots per setting pair");
    auto *seed_opt = app.add_option("--seed", seed, "RNG seed");
    auto *s_opt = app.add_option("--s-tol", s_tol, "Tolerance on |S - 4*sqrt(3)|");
    auto *u_opt = app.add_option("--uniform-tol", uniform_tol, "Tolerance on |P(a|A4) - 1/4|");
    auto *d_opt = app.add_option("--det-tol", det_tol, "Rank-one determinant tolerance");
    auto *r_opt = app.add_option("--rank-tol", rank_tol, "Smallest-singular-value threshold");
    auto *j_opt = app.add_option("--jobs", jobs, "Worker threads for sweep rows");
    app.add_option("--out", out, "Report path (stdout when omitted)");
    auto *mr_opt = app.add_option("--max-rounds", max_rounds, "Seesaw round cap");
    auto *eps_opt = app.add_option("--convergence-eps", convergence_eps, "Seesaw convergence threshold");

    CLI11_PARSE(app, argc, argv);

    try {
        ebicert::cli::RunConfig cfg;
        if (!config_path.empty()) cfg = ebicert::cli::parse_config_file(config_path, cfg);

        // Flags override the config file.
        const auto fmt = [](double x) { return ebicert::report::format_double(x); };
        if (!positional_command.empty()) ebicert::cli::apply_setting(cfg, "command", positional_command);
        if (!flag_command.empty()) ebicert::cli::apply_setting(cfg, "command", flag_command);
        if (!source.empty()) ebicert::cli::apply_setting(cfg, "source", source);
        if (v_opt->count()) ebicert::cli::apply_setting(cfg, "v", fmt(v));
        if (shots_opt->count()) ebicert::cli::apply_setting(cfg, "shots", std::to_string(shots));
        if (seed_opt->count()) cfg.seed = static_cast<std::uint64_t>(seed);
        if (s_opt->count()) ebicert::cli::apply_setting(cfg, "s-tol", fmt(s_tol));
        if (u_opt->count()) ebicert::cli::apply_setting(cfg, "uniform-tol", fmt(uniform_tol));
        if (d_opt->count()) ebicert::cli::apply_setting(cfg, "det-tol", fmt(det_tol));
        if (r_opt->count()) ebicert::cli::apply_setting(cfg, "rank-tol", fmt(rank_tol));
        if (j_opt->count()) ebicert::cli::apply_setting(cfg, "jobs", std::to_string(jobs));
        if (!out.empty()) cfg.out = out;
        if (mr_opt->count()) ebicert::cli::apply_setting(cfg, "max-rounds", std::to_string(max_rounds));
        if (eps_opt->count())
            ebicert::cli::apply_setting(cfg, "convergence-eps", fmt(convergence_eps));

        return ebicert::cli::run(cfg);
    } catch (const ebicert::cli::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ebicert::report::IoError &e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    }
}
