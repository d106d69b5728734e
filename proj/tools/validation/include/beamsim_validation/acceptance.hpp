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
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "beamsim/montecarlo.hpp"

namespace beamsim::validation {

struct AcceptanceOptions
{
    std::uint64_t trials = 100000;
    std::uint64_t seed = 20180101;
    unsigned workers = 0; // 0 = default_worker_count()
    /// Fault to inject, for exercising the failure path. Recognized: "specfun".
    std::string inject_fault;
};

struct CriterionResult
{
    int id = 0;
    std::string name;
    bool passed = false;
    std::vector<std::string> lines; // measured values, one per line
};

/// Criterion ids in execution order.
std::vector<int> criterion_ids();
std::string criterion_name(int id);

/// Runs criteria and caches simulated SE points so that grids shared
/// between criteria are simulated once.
class AcceptanceSuite
{
  public:
    explicit AcceptanceSuite(AcceptanceOptions options);

    CriterionResult run(int id);
    std::vector<CriterionResult> run_all();

    /// Simulated SE in nats for a square-ish grid of b pairs, m-Nakagami fading
    /// and reference SNR c d^-alpha / sigma^2.
    SEEstimate simulated_se(double lambda0, std::int64_t b, double m, double reference_snr);

    const AcceptanceOptions& options() const { return options_; }

  private:
    AcceptanceOptions options_;
    std::map<std::tuple<double, std::int64_t, double, double>, SEEstimate> cache_;
};

/// Status line and indented measurement lines for one criterion.
std::string format_criterion(const CriterionResult& result);

/// Plain-text report: one "PASS"/"FAIL" line per criterion followed by its
/// measurements, and a closing summary line. Contains no timing, so equal
/// inputs yield byte-identical reports.
std::string format_report(std::span<const CriterionResult> results);

/// First failing criterion, or nullptr.
const CriterionResult* first_failure(std::span<const CriterionResult> results);

} // namespace beamsim::validation
