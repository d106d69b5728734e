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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "beamsim/beam.hpp"
#include "beamsim/channel.hpp"
#include "beamsim/montecarlo.hpp"
#include "beamsim/throughput.hpp"
#include "config.hpp"

namespace beamsim::app {

/// Run-wide settings from the top of the config file and the command line.
struct RunSettings
{
    std::uint64_t seed = 1;
    std::uint64_t trials = 100000;
    RateUnits units = RateUnits::nats;
    std::vector<std::string> defaulted; // keys that took their default
};

RunSettings resolve_run_settings(const ConfigFile* config);

/// Resolved, validated parameters for one evaluation point.
struct PointParams
{
    double lambda0 = 0.0;
    BeamGrid grid;
    FadingModel fading;
    double reference_snr = 0.0; // c d^-alpha / sigma^2
    PathSampling sampling = PathSampling::superposition;

    ThroughputConfig throughput; // t_total meaningful only when has_interval
    bool has_interval = false;
    std::optional<double> velocity;
    std::vector<std::int64_t> beams_per_side; // throughput curve abscissa, B = M^2

    /// Every parameter as text (after defaults), and the keys that were defaulted.
    std::map<std::string, std::string> resolved;
    std::vector<std::string> defaulted;

    LinkBudget link() const { return LinkBudget::from_reference_snr(reference_snr, lambda0); }
    double rho() const { return reference_snr / lambda0 * grid.gain_t * grid.gain_r; }
};

/// Parameter keys accepted in [sweep] and [point] sections.
const std::vector<std::string>& parameter_keys();

/// Resolves `fixed` (plus an optional swept key/value) against the defaults.
/// `section_line` is used for diagnostics about missing keys.
PointParams resolve_point(const EntryMap& fixed, const std::string& source, int section_line,
                          const std::string& swept_key = "", double swept_value = 0.0);

enum class Output
{
    sim_se,
    upper_nakagami,
    upper_rayleigh,
    lower,
    sparse,
    tp,
    b_star_numeric,
    b_star_closed,
    hpbw_star,
};

const char* to_string(Output output);
bool is_throughput_output(Output output);

struct SweepSpec
{
    std::string name;
    std::string variable; // config key of the swept parameter
    std::vector<double> values;
    std::vector<Output> outputs;
    EntryMap fixed;
    int line = 0;
};

/// Variables that may be swept.
const std::vector<std::string>& sweep_variables();

SweepSpec parse_sweep(const ConfigSection& section, const std::string& source);

/// Formats a double with the shortest representation that round-trips.
std::string format_number(double value);

} // namespace beamsim::app
