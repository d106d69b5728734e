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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "params.hpp"
#include "table.hpp"

namespace beamsim::app {

enum ExitCode : int
{
    exit_ok = 0,
    exit_numerical = 1,
    exit_config = 2,
    exit_infeasible = 3,
};

struct EvaluationSettings
{
    RunSettings run;
    unsigned workers = 0; // 0 = default_worker_count()
};

struct SweepResult
{
    Table table;
    nlohmann::ordered_json record; // manifest entry, without wall time
    bool has_throughput = false;
    std::size_t infeasible_points = 0;
    std::size_t points = 0;
};

/// Resolves every point of `spec` without evaluating anything, so schema
/// errors surface before any simulation starts.
void check_sweep(const SweepSpec& spec, const std::string& source);

SweepResult run_sweep(const SweepSpec& spec, const std::string& source, const EvaluationSettings& settings);

/// One-row table of the simulated SE at `point`.
Table simulate_table(const PointParams& point, const EvaluationSettings& settings);

/// One-row table of every analytic SE bound at `point`, with the
/// evaluation path of the Nakagami bound.
Table bounds_table(const PointParams& point, const EvaluationSettings& settings);

/// Throughput curve over point.beams_per_side (default: every square up to
/// the feasible limit, at most 400 per side) plus a summary row. Throws
/// InfeasibleError when no beam count leaves time for data.
Table throughput_table(const PointParams& point, const EvaluationSettings& settings);

/// JSON-lines run manifest.
class Manifest
{
  public:
    explicit Manifest(const std::filesystem::path& path);
    void write(const nlohmann::ordered_json& record);

  private:
    std::ofstream out_;
};

nlohmann::ordered_json run_record(const std::string& command, const std::string& config_source,
                                  const EvaluationSettings& settings);
nlohmann::ordered_json point_record(const PointParams& point);

} // namespace beamsim::app
