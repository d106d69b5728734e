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

#include "runner.hpp"

#include <algorithm>
#include <cmath>

#include "beamsim/analytic.hpp"
#include "beamsim/errors.hpp"
#include "beamsim/montecarlo.hpp"
#include "beamsim/throughput.hpp"
#include "beamsim/version.hpp"

namespace beamsim::app {

namespace {

bool contains(const std::vector<Output>& outputs, Output output)
{
    return std::find(outputs.begin(), outputs.end(), output) != outputs.end();
}

bool any_throughput(const std::vector<Output>& outputs)
{
    return std::any_of(outputs.begin(), outputs.end(), is_throughput_output);
}

std::string in_units(double nats, RateUnits units)
{
    return format_number(from_nats(nats, units));
}

bool is_square(std::int64_t b)
{
    const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(b))));
    return root * root == b;
}

SimConfig sim_config(const PointParams& point, const EvaluationSettings& settings)
{
    SimConfig config;
    config.link = point.link();
    config.grid = point.grid;
    config.fading = point.fading;
    config.trials = settings.run.trials;
    config.seed = settings.run.seed;
    config.units = settings.run.units;
    config.sampling = point.sampling;
    return config;
}

SparseModel sparse_model(const PointParams& point)
{
    return SparseModel::from_sparsity(point.lambda0, point.grid.b, point.fading.equivalent_nakagami_m());
}

// Columns contributed by each output in one-row-per-point tables.
std::vector<std::string> point_columns(const std::vector<Output>& outputs)
{
    std::vector<std::string> columns;
    if (any_throughput(outputs)) {
        columns.push_back("t_total");
        columns.push_back("feasible");
    }
    for (auto output : outputs) {
        switch (output) {
        case Output::sim_se: columns.insert(columns.end(), {"sim_se", "sim_ci95"}); break;
        case Output::tp: columns.insert(columns.end(), {"tp", "tp_raw"}); break;
        case Output::b_star_numeric: columns.insert(columns.end(), {"b_star_numeric", "b_star_square"}); break;
        case Output::hpbw_star: columns.insert(columns.end(), {"hpbw_star", "hpbw_star_closed"}); break;
        default: columns.push_back(to_string(output)); break;
        }
    }
    return columns;
}

struct OptimumCells
{
    bool feasible = false;
    std::string b_star_numeric, b_star_square, b_star_closed, hpbw_star, hpbw_star_closed;
};

OptimumCells optimum_cells(const ThroughputConfig& cfg)
{
    OptimumCells cells;
    cells.feasible = !feasible_region(cfg).empty;
    if (!cells.feasible) return cells;
    const double numeric = optimal_b_numeric(cfg);
    cells.b_star_numeric = format_number(numeric);
    cells.b_star_square = std::to_string(best_square_beam_count(numeric, cfg));
    cells.hpbw_star = format_number(optimal_hpbw(numeric));
    try {
        const double closed = optimal_b_closed_form(cfg);
        cells.b_star_closed = format_number(closed);
        cells.hpbw_star_closed = format_number(optimal_hpbw(std::max(closed, 1.0)));
    } catch (const ApproximationInvalidError&) {
        // Left empty: the closed form has no real root here.
    }
    return cells;
}

void fill_optimum(const Table& table, std::vector<std::string>& row, const std::vector<Output>& outputs,
                  const OptimumCells& cells)
{
    if (contains(outputs, Output::b_star_numeric)) {
        table.set(row, "b_star_numeric", cells.b_star_numeric);
        table.set(row, "b_star_square", cells.b_star_square);
    }
    if (contains(outputs, Output::b_star_closed)) table.set(row, "b_star_closed", cells.b_star_closed);
    if (contains(outputs, Output::hpbw_star)) {
        table.set(row, "hpbw_star", cells.hpbw_star);
        table.set(row, "hpbw_star_closed", cells.hpbw_star_closed);
    }
}

bool curve_mode(const SweepSpec& spec, const PointParams& first)
{
    return contains(spec.outputs, Output::tp) && !first.beams_per_side.empty();
}

void check_point(const SweepSpec& spec, const PointParams& point, const std::string& source)
{
    if (any_throughput(spec.outputs) && !point.has_interval) {
        throw ConfigError(source, spec.line, "t_total", "throughput outputs need t_total or velocity");
    }
    if (!point.beams_per_side.empty()) {
        if (!contains(spec.outputs, Output::tp)) {
            throw ConfigError(source, spec.fixed.at("beams_per_side").line, "beams_per_side",
                              "only used together with the tp output");
        }
        if (spec.variable == "B") {
            throw ConfigError(source, spec.line, "variable", "B cannot be swept while beams_per_side draws a curve");
        }
        for (auto output : spec.outputs) {
            if (!is_throughput_output(output)) {
                throw ConfigError(source, spec.line, "outputs",
                                  std::string("'") + to_string(output) +
                                      "' cannot be combined with a beams_per_side curve");
            }
        }
    } else if (contains(spec.outputs, Output::tp) && !is_square(point.grid.b)) {
        throw ConfigError(source, spec.line, "B", "tp needs a perfect-square B (equal beam counts per side)");
    }
}

std::vector<std::int64_t> default_curve(const ThroughputConfig& cfg)
{
    const auto region = feasible_region(cfg);
    std::vector<std::int64_t> sides;
    if (region.empty) return sides;
    for (std::int64_t s = 1; s <= 400 && static_cast<double>(s * s) < region.b_max; ++s) sides.push_back(s);
    return sides;
}

Table curve_table_header(const std::string& variable, const std::vector<Output>& outputs)
{
    Table table;
    table.header = {"row_type"};
    if (!variable.empty()) table.header.push_back(variable);
    table.header.insert(table.header.end(), {"t_total", "feasible", "B", "tp", "tp_raw"});
    for (auto output : outputs) {
        if (output == Output::b_star_numeric) table.header.insert(table.header.end(), {"b_star_numeric", "b_star_square"});
        if (output == Output::b_star_closed) table.header.push_back("b_star_closed");
        if (output == Output::hpbw_star) table.header.insert(table.header.end(), {"hpbw_star", "hpbw_star_closed"});
    }
    table.header.push_back("units");
    return table;
}

// Appends curve rows and one summary row; returns whether the point is feasible.
bool append_curve(Table& table, const std::string& variable, const std::string& value,
                  const std::vector<std::int64_t>& sides, const std::vector<Output>& outputs,
                  const ThroughputConfig& cfg, RateUnits units)
{
    const auto cells = optimum_cells(cfg);
    const std::string t_total = format_number(cfg.t_total);
    const std::string feasible = cells.feasible ? "true" : "false";
    for (std::int64_t s : sides) {
        auto& row = table.add_row();
        table.set(row, "row_type", "curve");
        if (!variable.empty()) table.set(row, variable, value);
        table.set(row, "t_total", t_total);
        table.set(row, "feasible", feasible);
        table.set(row, "B", std::to_string(s * s));
        const double tp = throughput(s * s, cfg);
        table.set(row, "tp", in_units(std::max(tp, 0.0), units));
        table.set(row, "tp_raw", in_units(tp, units));
        table.set(row, "units", to_string(units));
    }
    auto& summary = table.add_row();
    table.set(summary, "row_type", "summary");
    if (!variable.empty()) table.set(summary, variable, value);
    table.set(summary, "t_total", t_total);
    table.set(summary, "feasible", feasible);
    fill_optimum(table, summary, outputs, cells);
    table.set(summary, "units", to_string(units));
    return cells.feasible;
}

} // namespace

void check_sweep(const SweepSpec& spec, const std::string& source)
{
    for (double value : spec.values) {
        const auto point = resolve_point(spec.fixed, source, spec.line, spec.variable, value);
        check_point(spec, point, source);
    }
}

SweepResult run_sweep(const SweepSpec& spec, const std::string& source, const EvaluationSettings& settings)
{
    SweepResult result;
    result.has_throughput = any_throughput(spec.outputs);
    const RateUnits units = settings.run.units;

    std::vector<PointParams> points;
    for (double value : spec.values) {
        points.push_back(resolve_point(spec.fixed, source, spec.line, spec.variable, value));
        check_point(spec, points.back(), source);
    }
    const bool curve = curve_mode(spec, points.front());

    nlohmann::ordered_json paths = nlohmann::ordered_json::array();
    if (curve) {
        result.table = curve_table_header(spec.variable, spec.outputs);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const bool feasible = append_curve(result.table, spec.variable, format_number(spec.values[i]),
                                               points[i].beams_per_side, spec.outputs, points[i].throughput, units);
            if (!feasible) ++result.infeasible_points;
        }
    } else {
        result.table.header = {spec.variable};
        const auto columns = point_columns(spec.outputs);
        result.table.header.insert(result.table.header.end(), columns.begin(), columns.end());
        result.table.header.push_back("units");

        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& point = points[i];
            auto& row = result.table.add_row();
            result.table.set(row, spec.variable, format_number(spec.values[i]));
            result.table.set(row, "units", to_string(units));
            const double rho = point.rho();
            const auto model = sparse_model(point);

            if (result.has_throughput) {
                const auto& cfg = point.throughput;
                const auto cells = optimum_cells(cfg);
                if (!cells.feasible) ++result.infeasible_points;
                result.table.set(row, "t_total", format_number(cfg.t_total));
                result.table.set(row, "feasible", cells.feasible ? "true" : "false");
                fill_optimum(result.table, row, spec.outputs, cells);
                if (contains(spec.outputs, Output::tp)) {
                    const double tp = throughput(point.grid.b, cfg);
                    result.table.set(row, "tp", in_units(std::max(tp, 0.0), units));
                    result.table.set(row, "tp_raw", in_units(tp, units));
                }
            }
            for (auto output : spec.outputs) {
                switch (output) {
                case Output::sim_se: {
                    const auto estimate = estimate_se(sim_config(point, settings), settings.workers);
                    result.table.set(row, "sim_se", format_number(estimate.mean));
                    result.table.set(row, "sim_ci95", format_number(estimate.ci95));
                    break;
                }
                case Output::upper_nakagami: {
                    const auto bound = analytic::se_upper_nakagami(model, rho);
                    result.table.set(row, "upper_nakagami", in_units(bound.value, units));
                    paths.push_back(beamsim::to_string(bound.path));
                    break;
                }
                case Output::upper_rayleigh:
                    result.table.set(row, "upper_rayleigh", in_units(analytic::se_upper_rayleigh(model, rho), units));
                    break;
                case Output::lower:
                    result.table.set(row, "lower", in_units(analytic::se_lower(model, rho), units));
                    break;
                case Output::sparse:
                    result.table.set(row, "sparse", in_units(analytic::se_sparse_approx(point.lambda0, rho).value, units));
                    break;
                default: break; // throughput outputs filled above
                }
            }
        }
    }
    result.points = points.size();

    auto parameters = point_record(points.front());
    parameters["parameters"].erase(spec.variable);
    if (spec.variable == "velocity") parameters["parameters"].erase("t_total");

    nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
    for (auto output : spec.outputs) outputs.push_back(to_string(output));
    auto& record = result.record;
    record["record"] = "sweep";
    record["name"] = spec.name;
    record["csv"] = spec.name + ".csv";
    record["layout"] = curve ? "curve+summary" : "one row per value";
    record["variable"] = spec.variable;
    record["values"] = spec.values;
    record["outputs"] = outputs;
    record["parameters"] = parameters["parameters"];
    record["defaulted"] = parameters["defaulted"];
    if (!paths.empty()) record["upper_nakagami_paths"] = paths;
    if (result.has_throughput) record["infeasible_points"] = result.infeasible_points;
    return result;
}

Table simulate_table(const PointParams& point, const EvaluationSettings& settings)
{
    const auto estimate = estimate_se(sim_config(point, settings), settings.workers);
    Table table;
    table.header = {"lambda0", "B", "rho", "sim_se", "sim_std_error", "sim_ci95", "trials", "seed", "units"};
    auto& row = table.add_row();
    row = {format_number(point.lambda0), std::to_string(point.grid.b), format_number(point.rho()),
           format_number(estimate.mean), format_number(estimate.std_error), format_number(estimate.ci95),
           std::to_string(estimate.trials), std::to_string(settings.run.seed), to_string(settings.run.units)};
    return table;
}

Table bounds_table(const PointParams& point, const EvaluationSettings& settings)
{
    const RateUnits units = settings.run.units;
    const auto model = sparse_model(point);
    const double rho = point.rho();
    const auto upper = analytic::se_upper_nakagami(model, rho);
    const auto sparse = analytic::se_sparse_approx(point.lambda0, rho);
    Table table;
    table.header = {"lambda0", "B", "m", "rho", "p", "upper_nakagami", "upper_nakagami_path", "upper_rayleigh",
                    "lower", "sparse", "sparse_regime", "units"};
    auto& row = table.add_row();
    row = {format_number(point.lambda0),
           std::to_string(point.grid.b),
           format_number(model.m),
           format_number(rho),
           format_number(model.p),
           in_units(upper.value, units),
           beamsim::to_string(upper.path),
           in_units(analytic::se_upper_rayleigh(model, rho), units),
           in_units(analytic::se_lower(model, rho), units),
           in_units(sparse.value, units),
           sparse.sparse_regime ? "true" : "false",
           to_string(units)};
    return table;
}

Table throughput_table(const PointParams& point, const EvaluationSettings& settings)
{
    if (!point.has_interval) throw ConfigError("<parameters>", 0, "t_total", "throughput needs t_total or velocity");
    const auto& cfg = point.throughput;
    const auto region = feasible_region(cfg);
    if (region.empty) {
        throw InfeasibleError("throughput: training alone exceeds the interval T = " + format_number(cfg.t_total) +
                              " s for every beam count (F_t = " + format_number(cfg.f_t()) + ")");
    }
    const auto sides = point.beams_per_side.empty() ? default_curve(cfg) : point.beams_per_side;
    const std::vector<Output> all = {Output::b_star_numeric, Output::b_star_closed, Output::hpbw_star};
    Table table = curve_table_header("", all);
    append_curve(table, "", "", sides, all, cfg, settings.run.units);
    return table;
}

Manifest::Manifest(const std::filesystem::path& path) : out_(path, std::ios::out | std::ios::trunc)
{
    if (!out_) throw ConfigError(path.string(), 0, "", "cannot open manifest for writing");
}

void Manifest::write(const nlohmann::ordered_json& record)
{
    out_ << record.dump() << '\n';
    out_.flush();
}

nlohmann::ordered_json run_record(const std::string& command, const std::string& config_source,
                                  const EvaluationSettings& settings)
{
    nlohmann::ordered_json record;
    record["record"] = "run";
    record["command"] = command;
    record["version_string"] = version_string;
    record["schema_version"] = schema_version;
    record["config"] = config_source;
    record["seed"] = settings.run.seed;
    record["trials"] = settings.run.trials;
    record["units"] = to_string(settings.run.units);
    record["workers"] = settings.workers == 0 ? default_worker_count() : settings.workers;
    record["defaulted"] = settings.run.defaulted;
    return record;
}

nlohmann::ordered_json point_record(const PointParams& point)
{
    nlohmann::ordered_json record;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    for (const auto& [key, value] : point.resolved) parameters[key] = value;
    record["parameters"] = parameters;
    record["defaulted"] = point.defaulted;
    return record;
}

} // namespace beamsim::app
