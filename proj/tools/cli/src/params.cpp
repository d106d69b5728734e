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

#include "params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "beamsim/errors.hpp"

namespace beamsim::app {

namespace {

// Defaults for keys that have one; the remaining parameter keys are optional.
const std::map<std::string, std::string>& parameter_defaults()
{
    static const std::map<std::string, std::string> defaults = {
        {"lambda0", "1.9"},       {"B", "121"},
        {"fading", "nakagami"},   {"m", "3.2"},
        {"reference_snr", "0.01"}, {"t_f", "5e-06"},
        {"n_b", "4"},             {"carrier_freq", "60000000000"},
        {"coherence_model", "doppler"}, {"coherence_v_ref", "1"},
        {"sampling", "superposition"},
    };
    return defaults;
}

std::int64_t as_integer(double value, const ConfigEntry& entry, const std::string& source, const std::string& field,
                        std::int64_t minimum)
{
    if (value != std::floor(value) || value < static_cast<double>(minimum) || value > 9.0e15) {
        throw ConfigError(source, entry.line, field,
                          "'" + entry.value + "' must be an integer >= " + std::to_string(minimum));
    }
    return static_cast<std::int64_t>(value);
}

class Resolver
{
  public:
    Resolver(const EntryMap& fixed, const std::string& source, int section_line)
        : entries_(fixed), source_(source), section_line_(section_line)
    {
    }

    void set_swept(const std::string& key, double value)
    {
        entries_[key] = ConfigEntry{format_number(value), 0};
        swept_ = key;
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const ConfigEntry& entry(const std::string& key) const { return entries_.at(key); }

    /// Text for `key`, applying its default (and recording that) when absent.
    ConfigEntry take(const std::string& key)
    {
        if (auto it = entries_.find(key); it != entries_.end()) {
            params_.resolved[key] = it->second.value;
            return it->second;
        }
        const auto& defaults = parameter_defaults();
        const auto def = defaults.find(key);
        if (def == defaults.end()) {
            throw ConfigError(source_, section_line_, key, "required parameter is not set");
        }
        params_.resolved[key] = def->second;
        params_.defaulted.push_back(key);
        return ConfigEntry{def->second, 0};
    }

    double number(const std::string& key) { return parse_number(take(key), source_, key); }

    double positive(const std::string& key)
    {
        const auto e = take(key);
        const double value = parse_number(e, source_, key);
        if (!(value > 0.0)) throw ConfigError(source_, e.line, key, "must be positive");
        return value;
    }

    void exclusive(const std::string& a, const std::string& b)
    {
        if (has(a) && has(b)) {
            const auto& later = entry(a).line >= entry(b).line ? entry(a) : entry(b);
            throw ConfigError(source_, later.line, a, "cannot be combined with '" + b + "'");
        }
    }

    [[noreturn]] void fail(const std::string& key, const std::string& message) const
    {
        const int line = has(key) ? entry(key).line : section_line_;
        throw ConfigError(source_, line, key, message);
    }

    const std::string& source() const { return source_; }
    PointParams& params() { return params_; }

  private:
    EntryMap entries_;
    std::string source_;
    int section_line_;
    std::string swept_;
    PointParams params_;
};

} // namespace

RunSettings resolve_run_settings(const ConfigFile* config)
{
    RunSettings settings;
    static const std::vector<std::string> known = {"schema_version", "seed", "trials", "units"};
    const EntryMap empty;
    const EntryMap& globals = config ? config->globals : empty;
    const std::string source = config ? config->source : "<command line>";
    for (const auto& [key, entry] : globals) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError(source, entry.line, key, "unknown run-wide key");
        }
    }
    if (auto it = globals.find("seed"); it != globals.end()) {
        settings.seed = static_cast<std::uint64_t>(
            as_integer(parse_number(it->second, source, "seed"), it->second, source, "seed", 0));
    } else {
        settings.defaulted.push_back("seed");
    }
    if (auto it = globals.find("trials"); it != globals.end()) {
        settings.trials = static_cast<std::uint64_t>(
            as_integer(parse_number(it->second, source, "trials"), it->second, source, "trials", 1));
    } else {
        settings.defaulted.push_back("trials");
    }
    if (auto it = globals.find("units"); it != globals.end()) {
        try {
            settings.units = parse_rate_units(it->second.value);
        } catch (const DomainError&) {
            throw ConfigError(source, it->second.line, "units", "must be 'nats' or 'bits'");
        }
    } else {
        settings.defaulted.push_back("units");
    }
    return settings;
}

const std::vector<std::string>& parameter_keys()
{
    static const std::vector<std::string> keys = {
        "lambda0",         "B",               "hpbw",          "fading",
        "m",               "K_dB",            "reference_snr", "rho",
        "sampling",        "t_f",             "n_b",           "t_total",
        "velocity",        "carrier_freq",    "coherence_model", "coherence_t_ref",
        "coherence_v_ref", "coherence_calibrate_hpbw", "beams_per_side",
    };
    return keys;
}

PointParams resolve_point(const EntryMap& fixed, const std::string& source, int section_line,
                          const std::string& swept_key, double swept_value)
{
    const auto& keys = parameter_keys();
    for (const auto& [key, entry] : fixed) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ConfigError(source, entry.line, key, "unknown parameter");
        }
    }
    Resolver r(fixed, source, section_line);
    if (!swept_key.empty()) r.set_swept(swept_key, swept_value);
    auto& p = r.params();

    p.lambda0 = r.positive("lambda0");

    // Beam grid: pair count or half-power beamwidth.
    r.exclusive("hpbw", "B");
    if (r.has("hpbw")) {
        const double width = r.number("hpbw");
        if (!(width > 0.0 && width <= 360.0)) r.fail("hpbw", "must lie in (0, 360] degrees");
        p.grid = beam_grid(width, width);
    } else {
        const auto e = r.take("B");
        p.grid = BeamGrid::from_pair_count(as_integer(parse_number(e, source, "B"), e, source, "B", 1));
    }

    // Fading: an explicit K_dB implies Rician unless the family says otherwise.
    std::string family = r.has("fading") ? r.take("fading").value : (r.has("K_dB") ? "rician" : "");
    if (family.empty()) family = r.take("fading").value;
    else p.resolved["fading"] = family;
    if (family == "nakagami") {
        if (r.has("K_dB")) r.fail("K_dB", "applies only to fading = rician");
        const double m = r.number("m");
        if (!(m >= 0.5)) r.fail("m", "Nakagami shape must be >= 0.5");
        p.fading = FadingModel::nakagami(m);
    } else if (family == "rayleigh") {
        if (r.has("m")) r.fail("m", "applies only to fading = nakagami");
        if (r.has("K_dB")) r.fail("K_dB", "applies only to fading = rician");
        p.fading = FadingModel::rayleigh();
    } else if (family == "rician") {
        if (r.has("m")) r.fail("m", "applies only to fading = nakagami");
        const double k_db = r.number("K_dB");
        p.fading = FadingModel::rician(std::pow(10.0, k_db / 10.0));
    } else {
        r.fail("fading", "must be nakagami, rayleigh or rician");
    }

    // Link budget: reference SNR c d^-alpha / sigma^2, or rho directly.
    r.exclusive("rho", "reference_snr");
    if (r.has("rho")) {
        const double rho = r.positive("rho");
        p.reference_snr = rho * p.lambda0 / (p.grid.gain_t * p.grid.gain_r);
    } else {
        p.reference_snr = r.positive("reference_snr");
    }

    const std::string sampling = r.take("sampling").value;
    if (sampling == "superposition") {
        p.sampling = PathSampling::superposition;
    } else if (sampling == "per_pair") {
        p.sampling = PathSampling::per_pair;
    } else {
        r.fail("sampling", "must be superposition or per_pair");
    }

    // Throughput model.
    p.throughput.lambda0 = p.lambda0;
    p.throughput.k = p.reference_snr / p.lambda0;
    p.throughput.t_f = r.positive("t_f");
    {
        const auto e = r.take("n_b");
        p.throughput.n_b = as_integer(parse_number(e, source, "n_b"), e, source, "n_b", 0);
    }
    r.exclusive("t_total", "velocity");
    if (r.has("t_total")) {
        p.throughput.t_total = r.positive("t_total");
        p.has_interval = true;
    } else if (r.has("velocity")) {
        const double v = r.positive("velocity");
        p.velocity = v;
        const double carrier = r.positive("carrier_freq");
        const std::string model = r.take("coherence_model").value;
        if (model == "inverse_velocity") {
            r.exclusive("coherence_t_ref", "coherence_calibrate_hpbw");
            const double v_ref = r.positive("coherence_v_ref");
            double t_ref = 0.0;
            if (r.has("coherence_calibrate_hpbw")) {
                const double target = r.positive("coherence_calibrate_hpbw");
                t_ref = calibrate_interval_for_hpbw(p.throughput, target);
                p.resolved["coherence_t_ref"] = format_number(t_ref);
            } else if (r.has("coherence_t_ref")) {
                t_ref = r.positive("coherence_t_ref");
            } else {
                r.fail("coherence_t_ref", "inverse_velocity needs coherence_t_ref or coherence_calibrate_hpbw");
            }
            p.throughput.t_total = make_inverse_velocity_model(t_ref, v_ref)(v, carrier);
        } else {
            if (!coherence_models().contains(model)) r.fail("coherence_model", "unknown model '" + model + "'");
            for (const char* key : {"coherence_t_ref", "coherence_calibrate_hpbw"}) {
                if (r.has(key)) r.fail(key, "applies only to coherence_model = inverse_velocity");
            }
            p.throughput.t_total = coherence_time(v, carrier, model);
        }
        p.resolved["t_total"] = format_number(p.throughput.t_total);
        p.has_interval = true;
    } else {
        for (const char* key : {"carrier_freq", "coherence_model", "coherence_t_ref", "coherence_v_ref",
                                "coherence_calibrate_hpbw"}) {
            if (r.has(key)) r.fail(key, "needs velocity to be set");
        }
    }

    if (r.has("beams_per_side")) {
        const auto e = r.take("beams_per_side");
        for (double v : parse_number_list(e, source, "beams_per_side")) {
            p.beams_per_side.push_back(as_integer(v, e, source, "beams_per_side", 1));
        }
    }

    p.link().validate();
    p.fading.validate();
    std::sort(p.defaulted.begin(), p.defaulted.end());
    return p;
}

const char* to_string(Output output)
{
    switch (output) {
    case Output::sim_se: return "sim_se";
    case Output::upper_nakagami: return "upper_nakagami";
    case Output::upper_rayleigh: return "upper_rayleigh";
    case Output::lower: return "lower";
    case Output::sparse: return "sparse";
    case Output::tp: return "tp";
    case Output::b_star_numeric: return "b_star_numeric";
    case Output::b_star_closed: return "b_star_closed";
    case Output::hpbw_star: return "hpbw_star";
    }
    return "?";
}

bool is_throughput_output(Output output)
{
    return output == Output::tp || output == Output::b_star_numeric || output == Output::b_star_closed ||
           output == Output::hpbw_star;
}

const std::vector<std::string>& sweep_variables()
{
    static const std::vector<std::string> variables = {"lambda0", "B", "m", "K_dB", "velocity", "rho"};
    return variables;
}

SweepSpec parse_sweep(const ConfigSection& section, const std::string& source)
{
    SweepSpec spec;
    spec.name = section.name;
    spec.line = section.line;
    spec.fixed = section.entries;

    auto take = [&](const std::string& key) {
        const auto it = spec.fixed.find(key);
        if (it == spec.fixed.end()) throw ConfigError(source, section.line, key, "required in [sweep " + spec.name + "]");
        const ConfigEntry entry = it->second;
        spec.fixed.erase(it);
        return entry;
    };

    const auto variable = take("variable");
    const auto& variables = sweep_variables();
    if (std::find(variables.begin(), variables.end(), variable.value) == variables.end()) {
        throw ConfigError(source, variable.line, "variable", "cannot sweep '" + variable.value + "'");
    }
    spec.variable = variable.value;
    if (const auto it = spec.fixed.find(spec.variable); it != spec.fixed.end()) {
        throw ConfigError(source, it->second.line, spec.variable, "is the swept variable and cannot also be fixed");
    }

    spec.values = parse_number_list(take("values"), source, "values");

    const auto outputs = take("outputs");
    for (const auto& word : parse_word_list(outputs, source, "outputs")) {
        bool found = false;
        for (auto candidate : {Output::sim_se, Output::upper_nakagami, Output::upper_rayleigh, Output::lower,
                               Output::sparse, Output::tp, Output::b_star_numeric, Output::b_star_closed,
                               Output::hpbw_star}) {
            if (word == to_string(candidate)) {
                if (std::find(spec.outputs.begin(), spec.outputs.end(), candidate) != spec.outputs.end()) {
                    throw ConfigError(source, outputs.line, "outputs", "'" + word + "' listed twice");
                }
                spec.outputs.push_back(candidate);
                found = true;
            }
        }
        if (!found) throw ConfigError(source, outputs.line, "outputs", "unknown output '" + word + "'");
    }
    return spec;
}

std::string format_number(double value)
{
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ec == std::errc() ? end : buffer);
}

} // namespace beamsim::app
