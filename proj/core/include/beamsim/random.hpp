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

#include <array>
#include <cstdint>
#include <limits>

namespace beamsim {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11). Pure function of
/// (counter, key).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

//---------------------------------------------------------------------------//
/*!
 * Counter-based random stream.
 *
 * The 64-bit user seed is the Philox key; the 128-bit counter is split into a
 * 64-bit substream index and a 64-bit block index. Two streams with the same
 * (seed, substream) produce identical sequences regardless of which thread
 * owns them, so every Monte Carlo trial can derive its own stream from
 * (seed, trial index) without coordination.
 *
 * Satisfies UniformRandomBitGenerator; each Philox block yields two 64-bit
 * outputs.
 */
class RandomStream
{
  public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed, std::uint64_t substream = 0) noexcept
        : seed_(seed), substream_(substream)
    {
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        if (buffered_ == 0) refill();
        return buffer_[--buffered_];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Independent stream keyed by the same seed.
    RandomStream substream(std::uint64_t index) const noexcept { return RandomStream(seed_, index); }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t substream_index() const noexcept { return substream_; }

  private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t substream_;
    std::uint64_t block_ = 0;
    std::array<result_type, 2> buffer_{};
    int buffered_ = 0;
};

} // namespace beamsim
