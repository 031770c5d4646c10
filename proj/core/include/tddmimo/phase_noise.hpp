// SPDX-License-Identifier: Apache-2.0
//
// tddmimo - link-level simulator for reciprocity-calibrated TDD massive MIMO
// Copyright (C) 2026 The tddmimo authors
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

#ifndef TDDMIMO_PHASE_NOISE_HPP
#define TDDMIMO_PHASE_NOISE_HPP

#include "tddmimo/network.hpp"
#include "tddmimo/rng.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace tddmimo
{

enum class LoTopology
{
    FreeRunningPerTrx, // one LO per TRX
    LockedPerTrp,      // TRXs of a TRP share one LO
    LockedPerCluster,  // all TRXs of a cluster share one LO
    LockedGlobal       // a single LO for the whole network
};

std::string_view to_string(LoTopology topology);
LoTopology parse_lo_topology(std::string_view text);

// Which LO drives each TRX.
struct LoMap
{
    LoTopology topology = LoTopology::FreeRunningPerTrx;
    std::vector<std::size_t> lo_of_trx;
    std::size_t lo_count = 0;
};

LoMap make_lo_map(LoTopology topology, const NetworkLayout &layout);

// Free-running LOs, one per terminal (UE oscillators are never locked).
LoMap independent_los(std::size_t count);

// Snapshot of the Wiener phase processes phi[n] = phi[n-1] + Delta, Delta ~ N(0, sigma2).
// Phases are unwrapped radians.
struct PhaseState
{
    std::vector<double> phases; // one per LO
    long n = 0;
    double sample_time = 100e-6; // T_s [s]
    double sigma2 = 0.01;        // increment variance [rad^2]

    double time_s() const { return static_cast<double>(n) * sample_time; }
};

// One mt19937_64 substream per LO, derived as make_stream(seed, trial, tag, lo).
// Stepping LO j consumes only stream j, so adding LOs never changes existing ones.
class PhaseStreams
{
public:
    PhaseStreams(std::uint64_t master_seed, std::uint64_t trial, StreamTag tag, std::size_t lo_count);

    std::size_t size() const { return streams_.size(); }
    Engine &operator[](std::size_t lo) { return streams_[lo]; }

private:
    std::vector<Engine> streams_;
};

// Each LO phase uniform on [0, 2 pi); n = 0.
PhaseState init_phases(std::size_t lo_count, double sample_time, double sigma2, PhaseStreams &streams);

// Advance every LO by an independent N(0, sigma2) increment.
PhaseState step(const PhaseState &state, PhaseStreams &streams);

// LO phase seen by a TRX.
inline double trx_phase(const PhaseState &state, const LoMap &map, std::size_t trx)
{
    return state.phases[map.lo_of_trx[trx]];
}

} // namespace tddmimo

#endif
