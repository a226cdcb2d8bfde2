// Copyright 2026 The mdst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end for the tomography benchmarks.
//
//   mdst run campaign.cfg --out results.csv
//   mdst fig1 | fig2 | fig3 | tables [--seed S] [--trials T] [--workers W] [--out FILE]
//   mdst gopt

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "mdst/analysis.h"
#include "mdst/harness/presets.h"
#include "mdst/harness/report.h"

using namespace mdst;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

struct CommonFlags {
    std::optional<uint64_t> seed;
    std::optional<uint64_t> trials;
    size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::string out;
    std::string ensemble = "hs";
    std::string state_mode = "fresh";
    bool hermitize = false;
    bool quiet = false;
};

void add_common(CLI::App *cmd, CommonFlags &flags) {
    cmd->add_option("--seed", flags.seed, "Master seed (presets default to 1)");
    cmd->add_option("--trials", flags.trials, "Trials per cell");
    cmd->add_option("--workers", flags.workers, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", flags.out, "CSV output path (a .manifest.json is written next to it); default stdout");
    cmd->add_option("--ensemble", flags.ensemble, "Random-state ensemble")->check(CLI::IsMember({"hs", "pure"}));
    cmd->add_option("--state-mode", flags.state_mode, "Fresh random state per trial, or one fixed state")
        ->check(CLI::IsMember({"fresh", "fixed"}));
    cmd->add_flag("--hermitize", flags.hermitize, "Score (rho_r + rho_r^dagger)/2 instead of rho_r");
    cmd->add_flag("-q,--quiet", flags.quiet, "No progress on stderr");
}

RunOptions make_options(const CommonFlags &flags, uint64_t default_trials) {
    RunOptions opt;
    opt.seed = flags.seed.value_or(1);
    opt.trials = flags.trials.value_or(default_trials);
    opt.workers = flags.workers;
    opt.ensemble = parse_ensemble(flags.ensemble);
    opt.hermitize = flags.hermitize;
    opt.state_mode = flags.state_mode == "fixed" ? StateMode::Fixed : StateMode::Fresh;
    if (!flags.quiet) {
        opt.on_cell_done = [](const ResultRecord &r) {
            std::cerr << "[done] " << r.scheme << " d=" << r.d << " N=" << r.n;
            if (r.g) {
                std::cerr << " g=" << *r.g;
            }
            if (r.ok()) {
                std::cerr << " mean_D=" << r.mean_d << " +- " << r.stderr_d;
            } else {
                std::cerr << " ERROR: " << r.error;
            }
            std::cerr << "\n";
        };
    }
    return opt;
}

/// Writes the CSV to --out (plus manifest) or stdout.
void emit(const CommonFlags &flags, const std::string &csv, const nlohmann::json &manifest) {
    if (flags.out.empty()) {
        std::cout << csv;
        return;
    }
    std::ofstream f(flags.out);
    if (!f) {
        throw ConfigError("cannot write '" + flags.out + "'");
    }
    f << csv;
    std::ofstream m(manifest_path_for(flags.out));
    m << manifest.dump(2) << "\n";
}

int status_of(const std::vector<ResultRecord> &records) {
    int status = kExitOk;
    for (const auto &r : records) {
        if (r.numerical_failure) {
            return kExitNumerical;
        }
        if (!r.ok()) {
            status = kExitConfig;
        }
    }
    return status;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Direct state tomography benchmarks: MDST, DST, Pauli and SU(2) tomography"};
    app.require_subcommand(1);

    CommonFlags run_flags, fig1_flags, fig2_flags, fig3_flags, tables_flags;

    std::string config_path;
    auto *run = app.add_subcommand("run", "Run a campaign described by a key=value config file");
    run->add_option("config", config_path, "Config file")->required();
    add_common(run, run_flags);

    auto *fig1 = app.add_subcommand("fig1", "Mean trace distance and TV1 versus coupling strength (d=2, N=1000)");
    add_common(fig1, fig1_flags);

    std::string fig2_su2 = "both";
    auto *fig2 = app.add_subcommand("fig2", "Trace distance versus N for qubits");
    add_common(fig2, fig2_flags);
    fig2->add_option("--su2", fig2_su2, "SU(2) flavor: kernel, lsq or both");

    std::string fig3_su2 = "lsq";
    auto *fig3 = app.add_subcommand("fig3", "Trace distance versus N for d=5");
    add_common(fig3, fig3_flags);
    fig3->add_option("--su2", fig3_su2, "SU(2) flavor: kernel, lsq or both");

    TablesOptions table_opts;
    bool no_lsq = false;
    auto *tables = app.add_subcommand("tables", "Run the seven reference tables");
    add_common(tables, tables_flags);
    tables->add_option("--tables", table_opts.tables, "Table numbers to run (default all)")->delimiter(',');
    tables->add_option("--kernel-max-d", table_opts.kernel_max_d, "Run the SU(2) kernel flavor only for d <= this");
    tables->add_flag("--no-lsq", no_lsq, "Skip the random-basis least-squares SU(2) flavor");

    std::vector<size_t> gopt_dims{2, 3, 4, 5, 6, 7, 8, 9, 10};
    auto *gopt = app.add_subcommand("gopt", "Optimal coupling strength and TV1 minimum per dimension");
    gopt->add_option("--dims", gopt_dims, "Dimensions")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    auto start = std::chrono::steady_clock::now();
    std::ostringstream csv;
    try {
        if (*run) {
            ExperimentConfig cfg = load_config(config_path);
            if (run_flags.seed) {
                cfg.seed = run_flags.seed;
            }
            if (run_flags.trials) {
                cfg.trials = *run_flags.trials;
            }
            if (run->count("--workers")) {
                cfg.workers = run_flags.workers;
            }
            if (run->count("--ensemble")) {
                cfg.ensemble = parse_ensemble(run_flags.ensemble);
            }
            if (run->count("--state-mode")) {
                cfg.state_mode = run_flags.state_mode == "fixed" ? StateMode::Fixed : StateMode::Fresh;
            }
            cfg.hermitize = cfg.hermitize || run_flags.hermitize;
            if (run_flags.out.empty()) {
                run_flags.out = cfg.output;
            }
            cfg.validate();
            RunOptions options = make_options(run_flags, cfg.trials);
            options.seed = *cfg.seed;
            options.workers = cfg.workers;
            options.ensemble = cfg.ensemble;
            options.hermitize = cfg.hermitize;
            options.state_mode = cfg.state_mode;
            auto records = run_experiment(cfg, options.on_cell_done);
            write_results_csv(csv, records);
            emit(run_flags, csv.str(), make_manifest("run " + config_path, options, seconds_since(start), records));
            return status_of(records);
        }
        if (*fig1) {
            RunOptions options = make_options(fig1_flags, 10000);
            auto rows = preset_fig1(options);
            write_fig1_csv(csv, rows);
            nlohmann::json manifest = make_manifest("fig1", options, seconds_since(start), {});
            for (const auto &r : rows) {
                manifest["rows"].push_back({{"g", r.g}, {"tv1", r.tv1}, {"mean_D", r.mean_d}, {"stderr", r.stderr_d}});
            }
            emit(fig1_flags, csv.str(), manifest);
            return kExitOk;
        }
        if (*fig2 || *fig3) {
            bool is2 = static_cast<bool>(*fig2);
            auto &flags = is2 ? fig2_flags : fig3_flags;
            RunOptions options = make_options(flags, 1000);
            auto flavor = parse_su2_flavor(is2 ? fig2_su2 : fig3_su2);
            auto records = is2 ? preset_fig2(options, flavor) : preset_fig3(options, flavor);
            write_results_csv(csv, records);
            emit(flags, csv.str(), make_manifest(is2 ? "fig2" : "fig3", options, seconds_since(start), records));
            return status_of(records);
        }
        if (*tables) {
            table_opts.run_lsq = !no_lsq;
            RunOptions options = make_options(tables_flags, 1000);
            auto result = preset_tables(options, table_opts);
            write_results_csv(csv, result.records);
            auto manifest = make_manifest("tables", options, seconds_since(start), result.records);
            manifest["summary"] = nlohmann::json::array();
            for (const auto &s : result.summaries) {
                manifest["summary"].push_back(summary_to_json(s));
            }
            emit(tables_flags, csv.str(), manifest);
            if (!tables_flags.out.empty()) {
                std::string base = manifest_path_for(tables_flags.out);
                base = base.substr(0, base.size() - std::string(".manifest.json").size());
                std::ofstream(base + ".summary.json") << manifest["summary"].dump(2) << "\n";
            } else if (!tables_flags.quiet) {
                std::cerr << manifest["summary"].dump(2) << "\n";
            }
            return status_of(result.records);
        }
        if (*gopt) {
            std::cout << "d,g_opt,tv1_min,g_numeric\n";
            for (size_t d : gopt_dims) {
                double g = g_opt(d);
                std::cout << d << ',' << g << ',' << tv1_closed_form(d, g) << ',' << tv1_minimizer_numeric(d)
                          << '\n';
            }
            return kExitOk;
        }
    } catch (const ConfigError &e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PreconditionError &e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalError &e) {
        std::cerr << "numerical consistency failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
