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

#include "beamsim/channel.hpp"

#include <cstddef>
#include <cstdint>

namespace beamsim {

//---------------------------------------------------------------------------//
/*!
 * Sectored antenna configuration with non-overlapping beams spanning 360 deg.
 *
 * Main-lobe gain is 360 / HPBW and side lobes have zero gain. When a
 * requested HPBW does not divide 360 evenly the beam count is rounded to
 * the nearest integer and HPBW and gain are recomputed from it; the
 * requested values are kept so callers can report the adjustment.
 */
struct BeamGrid
{
    std::int64_t m_t = 1;
    std::int64_t m_r = 1;
    std::int64_t b = 1;
    double hpbw_t = 360.0; // deg
    double hpbw_r = 360.0; // deg
    double gain_t = 1.0;
    double gain_r = 1.0;
    double requested_hpbw_t = 360.0;
    double requested_hpbw_r = 360.0;

    bool adjusted() const;

    /// Grid with the given beam counts on each side.
    static BeamGrid from_counts(std::int64_t m_t, std::int64_t m_r);

    /// Most nearly square factorization M_t * M_r = b with M_t >= M_r.
    static BeamGrid from_pair_count(std::int64_t b);
};

struct BeamSelection
{
    std::size_t pair_index = 0;
    double opt_power = 0.0; // W
};

/// Builds a grid from HPBWs in degrees; M = round(360 / hpbw) per side.
BeamGrid beam_grid(double hpbw_t, double hpbw_r);

/// c d^-alpha lambda0^-1 G_t G_r sum_{l in L_i} |g_l|^2.
double pair_received_power(const ChannelRealization& realization, std::size_t pair_index, const LinkBudget& link,
                           const BeamGrid& grid);

/// Power-maximizing beam pair; ties go to the lowest index.
BeamSelection select_optimal_pair(const ChannelRealization& realization, const LinkBudget& link,
                                  const BeamGrid& grid);

/// Largest per-pair normalized power sum max_i sum_l |g_l|^2 (0 when every pair is empty).
double max_pair_power_sum(const ChannelRealization& realization, std::size_t* argmax = nullptr);

} // namespace beamsim
