// SPDX-License-Identifier: Apache-2.0
//
// beamsim: optimal analog beamforming analysis for sparse mmWave links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// beamsim command-line runner. Single-point subcommands print a CSV table
// to stdout; `sweep` writes one CSV per [sweep] section plus a JSON-lines
// manifest into --out-dir.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beamsim/errors.hpp"
#include "beamsim/version.hpp"
#include "beamsim_validation/acceptance.hpp"
#include "config.hpp"
#include "params.hpp"
#include "runner.hpp"
#include "table.hpp"

namespace fs = std::filesystem;
using namespace beamsim;
using namespace beamsim::app;

namespace {

struct CommonOptions
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::string out_dir;
    std::string units;
    std::vector<std::string> sets;
    std::string inject_fault;
};

void add_common(CLI::App* sub, CommonOptions& opts, bool point_params)
{
    sub->add_option("--config", opts.config, "Configuration file");
    sub->add_option("--seed", opts.seed, "Master RNG seed (overrides the config)");
    sub->add_option("--trials", opts.trials, "Monte Carlo trials per point (overrides the config)");
    sub->add_option("--out-dir", opts.out_dir, "Directory for CSV files and manifest.jsonl");
    sub->add_option("--units", opts.units, "Rate units")->check(CLI::IsMember({"nats", "bits"}));
    if (point_params) {
        sub->add_option("--set", opts.sets, "Point parameter override, key=value (repeatable)");
    }
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

EvaluationSettings settings_for(const CommonOptions& opts, const ConfigFile* config)
{
    EvaluationSettings settings;
    settings.run = resolve_run_settings(config);
    auto& defaulted = settings.run.defaulted;
    auto drop = [&](const std::string& key) { std::erase(defaulted, key); };
    if (opts.seed) {
        settings.run.seed = *opts.seed;
        drop("seed");
    }
    if (opts.trials) {
        if (*opts.trials == 0) throw ConfigError("<command line>", 0, "trials", "must be at least 1");
        settings.run.trials = *opts.trials;
        drop("trials");
    }
    if (!opts.units.empty()) {
        settings.run.units = parse_rate_units(opts.units);
        drop("units");
    }
    return settings;
}

std::optional<ConfigFile> load_optional(const std::string& path)
{
    if (path.empty()) return std::nullopt;
    return load_config(path);
}

PointParams point_from(const CommonOptions& opts, const ConfigFile* config)
{
    EntryMap fixed;
    int section_line = 0;
    std::string source = "<command line>";
    if (config) {
        source = config->source;
        const ConfigSection* point = nullptr;
        for (const auto& section : config->sections) {
            if (section.kind != "point") continue;
            if (point) throw ConfigError(source, section.line, "[point]", "only one [point] section is allowed");
            point = &section;
        }
        if (point) {
            fixed = point->entries;
            section_line = point->line;
        }
    }
    for (const auto& assignment : opts.sets) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("<command line>", 0, assignment, "--set expects key=value");
        }
        fixed[assignment.substr(0, eq)] = ConfigEntry{assignment.substr(eq + 1), 0};
    }
    return resolve_point(fixed, source, section_line);
}

void emit_point_table(const std::string& command, const CommonOptions& opts, const ConfigFile* config,
                      const EvaluationSettings& settings, const PointParams& point, const Table& table,
                      std::chrono::steady_clock::time_point start)
{
    write_csv(std::cout, table);
    if (opts.out_dir.empty()) return;
    fs::create_directories(opts.out_dir);
    {
        std::ofstream csv(fs::path(opts.out_dir) / (command + ".csv"), std::ios::binary);
        write_csv(csv, table);
    }
    Manifest manifest(fs::path(opts.out_dir) / "manifest.jsonl");
    manifest.write(run_record(command, config ? config->source : "", settings));
    auto record = point_record(point);
    record["record"] = "point";
    record["csv"] = command + ".csv";
    manifest.write(record);
    nlohmann::ordered_json summary;
    summary["record"] = "summary";
    summary["status"] = "ok";
    summary["exit_code"] = static_cast<int>(exit_ok);
    summary["wall_time_s"] = seconds_since(start);
    manifest.write(summary);
}

int run_point_command(const std::string& command, const CommonOptions& opts)
{
    const auto start = std::chrono::steady_clock::now();
    const auto config = load_optional(opts.config);
    const ConfigFile* file = config ? &*config : nullptr;
    const auto settings = settings_for(opts, file);
    const auto point = point_from(opts, file);
    Table table;
    if (command == "simulate") {
        table = simulate_table(point, settings);
    } else if (command == "bounds") {
        table = bounds_table(point, settings);
    } else {
        table = throughput_table(point, settings);
    }
    emit_point_table(command, opts, file, settings, point, table, start);
    return exit_ok;
}

int run_sweep_command(const CommonOptions& opts)
{
    const auto start = std::chrono::steady_clock::now();
    if (opts.config.empty()) throw ConfigError("<command line>", 0, "--config", "sweep needs a configuration file");
    const auto config = load_config(opts.config);
    const auto settings = settings_for(opts, &config);

    std::vector<SweepSpec> sweeps;
    for (const auto& section : config.sections) {
        if (section.kind == "sweep") sweeps.push_back(parse_sweep(section, config.source));
    }
    if (sweeps.empty()) throw ConfigError(config.source, 0, "[sweep]", "no [sweep NAME] sections");
    for (const auto& sweep : sweeps) check_sweep(sweep, config.source);

    const fs::path out_dir = opts.out_dir.empty() ? fs::path(".") : fs::path(opts.out_dir);
    fs::create_directories(out_dir);
    Manifest manifest(out_dir / "manifest.jsonl");
    manifest.write(run_record("sweep", config.source, settings));

    auto finish = [&](const char* status, int code, const std::string& message) {
        nlohmann::ordered_json summary;
        summary["record"] = "summary";
        summary["status"] = status;
        summary["exit_code"] = code;
        if (!message.empty()) summary["message"] = message;
        summary["wall_time_s"] = seconds_since(start);
        manifest.write(summary);
        return code;
    };

    std::vector<std::string> infeasible;
    try {
        for (const auto& sweep : sweeps) {
            const auto sweep_start = std::chrono::steady_clock::now();
            auto result = run_sweep(sweep, config.source, settings);
            {
                std::ofstream csv(out_dir / (sweep.name + ".csv"), std::ios::binary);
                write_csv(csv, result.table);
            }
            result.record["wall_time_s"] = seconds_since(sweep_start);
            manifest.write(result.record);
            if (result.has_throughput && result.infeasible_points == result.points) infeasible.push_back(sweep.name);
        }
    } catch (const NumericalError& e) {
        finish("numerical_failure", exit_numerical, e.what());
        throw;
    }
    if (!infeasible.empty()) {
        std::string names;
        for (const auto& name : infeasible) names += (names.empty() ? "" : ", ") + name;
        const std::string message = "no feasible beam count at any point of sweep(s): " + names;
        std::cerr << "beamsim: infeasible: " << message << '\n';
        return finish("infeasible", exit_infeasible, message);
    }
    return finish("ok", exit_ok, "");
}

int run_validate_command(const CommonOptions& opts)
{
    validation::AcceptanceOptions options;
    options.trials = opts.trials.value_or(50000);
    if (opts.seed) options.seed = *opts.seed;
    options.inject_fault = opts.inject_fault;

    validation::AcceptanceSuite suite(options);
    const auto results = suite.run_all();
    const std::string report = validation::format_report(results);
    std::cout << report;
    if (!opts.out_dir.empty()) {
        fs::create_directories(opts.out_dir);
        std::ofstream(fs::path(opts.out_dir) / "validate_report.txt", std::ios::binary) << report;
    }
    if (const auto* failure = validation::first_failure(results)) {
        std::cerr << "beamsim: validate failed; first failing criterion " << failure->id << " (" << failure->name
                  << ")\n";
        return exit_numerical;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"beamsim: analog beamforming capacity bounds, simulation and beam planning"};
    app.set_version_flag("--version", std::string(version_string));
    app.require_subcommand(1);

    CommonOptions opts;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo spectral efficiency at one point");
    auto* bounds = app.add_subcommand("bounds", "Analytic spectral-efficiency bounds at one point");
    auto* tput = app.add_subcommand("throughput", "Throughput curve and optimal beam count at one point");
    auto* sweep = app.add_subcommand("sweep", "Run every [sweep] section of a configuration file");
    auto* validate = app.add_subcommand("validate", "Run the acceptance suite at reduced trial counts");
    for (auto* sub : {simulate, bounds, tput}) add_common(sub, opts, true);
    add_common(sweep, opts, false);
    add_common(validate, opts, false);
    validate->add_option("--inject-fault", opts.inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_config;
    }

    try {
        if (*simulate) return run_point_command("simulate", opts);
        if (*bounds) return run_point_command("bounds", opts);
        if (*tput) return run_point_command("throughput", opts);
        if (*sweep) return run_sweep_command(opts);
        return run_validate_command(opts);
    } catch (const ConfigError& e) {
        std::cerr << "beamsim: config error: " << e.what() << '\n';
        return exit_config;
    } catch (const InfeasibleError& e) {
        std::cerr << "beamsim: infeasible: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const NumericalError& e) {
        std::cerr << "beamsim: numerical failure in " << e.operation() << ": " << e.what() << '\n';
        return exit_numerical;
    } catch (const DomainError& e) {
        std::cerr << "beamsim: invalid parameter: " << e.what() << '\n';
        return exit_config;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "beamsim: " << e.what() << '\n';
        return exit_config;
    }
}
