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

#include "beamsim/beam.hpp"

#include "beamsim/errors.hpp"

#include <cmath>
#include <sstream>

namespace beamsim {

namespace {

std::int64_t beams_for_hpbw(double hpbw)
{
    if (!(hpbw > 0.0) || !(hpbw <= 360.0)) {
        std::ostringstream os;
        os << "HPBW must lie in (0, 360] degrees, got " << hpbw;
        throw DomainError("beam_grid", os.str());
    }
    const auto m = static_cast<std::int64_t>(std::llround(360.0 / hpbw));
    return m < 1 ? 1 : m;
}

double link_scale(const LinkBudget& link, const BeamGrid& grid)
{
    return link.path_gain() / link.lambda0 * grid.gain_t * grid.gain_r;
}

void check_pairs(const char* op, const ChannelRealization& realization, const BeamGrid& grid)
{
    if (static_cast<std::int64_t>(realization.pair_count()) != grid.b) {
        throw DomainError(op, "realization has " + std::to_string(realization.pair_count()) +
                                  " beam pairs but the grid has " + std::to_string(grid.b));
    }
}

} // namespace

bool BeamGrid::adjusted() const
{
    constexpr double rel = 1e-9;
    return std::abs(hpbw_t - requested_hpbw_t) > rel * requested_hpbw_t ||
           std::abs(hpbw_r - requested_hpbw_r) > rel * requested_hpbw_r;
}

BeamGrid BeamGrid::from_counts(std::int64_t m_t, std::int64_t m_r)
{
    if (m_t < 1 || m_r < 1) {
        throw DomainError("beam_grid", "beam counts must be positive, got " + std::to_string(m_t) + "x" +
                                           std::to_string(m_r));
    }
    BeamGrid grid;
    grid.m_t = m_t;
    grid.m_r = m_r;
    grid.b = m_t * m_r;
    grid.hpbw_t = 360.0 / static_cast<double>(m_t);
    grid.hpbw_r = 360.0 / static_cast<double>(m_r);
    grid.gain_t = static_cast<double>(m_t);
    grid.gain_r = static_cast<double>(m_r);
    grid.requested_hpbw_t = grid.hpbw_t;
    grid.requested_hpbw_r = grid.hpbw_r;
    return grid;
}

BeamGrid BeamGrid::from_pair_count(std::int64_t b)
{
    if (b < 1) throw DomainError("beam_grid", "pair count must be positive, got " + std::to_string(b));
    auto m_r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(b)));
    while (m_r * m_r > b) --m_r;
    while (b % m_r != 0) --m_r;
    return from_counts(b / m_r, m_r);
}

BeamGrid beam_grid(double hpbw_t, double hpbw_r)
{
    BeamGrid grid = BeamGrid::from_counts(beams_for_hpbw(hpbw_t), beams_for_hpbw(hpbw_r));
    grid.requested_hpbw_t = hpbw_t;
    grid.requested_hpbw_r = hpbw_r;
    return grid;
}

double pair_received_power(const ChannelRealization& realization, std::size_t pair_index, const LinkBudget& link,
                           const BeamGrid& grid)
{
    check_pairs("pair_received_power", realization, grid);
    if (pair_index >= realization.pair_count()) {
        throw DomainError("pair_received_power", "pair index " + std::to_string(pair_index) + " out of range [0, " +
                                                     std::to_string(grid.b) + ")");
    }
    return link_scale(link, grid) * realization.pair_power_sum(pair_index);
}

double max_pair_power_sum(const ChannelRealization& realization, std::size_t* argmax)
{
    const auto counts = realization.counts();
    double best = 0.0;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) continue;
        const double sum = realization.pair_power_sum(i);
        if (sum > best) {
            best = sum;
            best_index = i;
        }
    }
    if (argmax != nullptr) *argmax = best_index;
    return best;
}

BeamSelection select_optimal_pair(const ChannelRealization& realization, const LinkBudget& link,
                                  const BeamGrid& grid)
{
    check_pairs("select_optimal_pair", realization, grid);
    BeamSelection selection;
    const double best = max_pair_power_sum(realization, &selection.pair_index);
    selection.opt_power = link_scale(link, grid) * best;
    return selection;
}

} // namespace beamsim
