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

// Acceptance gate: runs the criteria at full trial counts and prints one
// PASS/FAIL line per criterion. With --criterion N only that criterion runs,
// which is how ctest registers them individually.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "beamsim_validation/acceptance.hpp"

int main(int argc, char** argv)
{
    using namespace beamsim::validation;

    std::vector<int> ids;
    AcceptanceOptions options;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            ids.push_back(std::stoi(argv[++i]));
        } else if (arg == "--trials" && i + 1 < argc) {
            options.trials = std::stoull(argv[++i]);
        } else {
            std::cerr << "usage: beamsim_acceptance [--criterion N]... [--trials N]\n";
            return 2;
        }
    }
    if (ids.empty()) ids = criterion_ids();

    AcceptanceSuite suite(options);
    std::vector<CriterionResult> results;
    for (int id : ids) {
        results.push_back(suite.run(id));
        std::cout << format_criterion(results.back()) << std::flush;
    }
    const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    std::cout << passed << " of " << results.size() << " criteria passed\n";
    return first_failure(results) ? EXIT_FAILURE : EXIT_SUCCESS;
}
