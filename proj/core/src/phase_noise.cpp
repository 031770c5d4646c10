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

#include "tddmimo/phase_noise.hpp"
#include "tddmimo/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace tddmimo
{

void NetworkLayout::validate() const
{
    if (n_trp == 0 || trx_per_trp == 0 || cluster_size == 0)
        throw ConfigError("layout: n_trp, trx_per_trp and cluster_size must be positive");
    if (n_trp % cluster_size != 0)
        throw ConfigError("layout: n_trp must be divisible by cluster_size");
}

std::string_view to_string(LoTopology topology)
{
    switch (topology)
    {
    case LoTopology::FreeRunningPerTrx:
        return "free_running_per_trx";
    case LoTopology::LockedPerTrp:
        return "locked_per_trp";
    case LoTopology::LockedPerCluster:
        return "locked_per_cluster";
    case LoTopology::LockedGlobal:
        return "locked_global";
    }
    return "?";
}

LoTopology parse_lo_topology(std::string_view text)
{
    for (auto t : {LoTopology::FreeRunningPerTrx, LoTopology::LockedPerTrp, LoTopology::LockedPerCluster,
                   LoTopology::LockedGlobal})
        if (text == to_string(t))
            return t;
    throw ConfigError("unknown LO topology '" + std::string(text) +
                      "' (expected free_running_per_trx|locked_per_trp|locked_per_cluster|locked_global)");
}

LoMap make_lo_map(LoTopology topology, const NetworkLayout &layout)
{
    layout.validate();
    LoMap map;
    map.topology = topology;
    map.lo_of_trx.resize(layout.trx_count());
    for (std::size_t i = 0; i < layout.trx_count(); ++i)
    {
        switch (topology)
        {
        case LoTopology::FreeRunningPerTrx:
            map.lo_of_trx[i] = i;
            break;
        case LoTopology::LockedPerTrp:
            map.lo_of_trx[i] = layout.trp_of_trx(i);
            break;
        case LoTopology::LockedPerCluster:
            map.lo_of_trx[i] = layout.cluster_of_trx(i);
            break;
        case LoTopology::LockedGlobal:
            map.lo_of_trx[i] = 0;
            break;
        }
    }
    switch (topology)
    {
    case LoTopology::FreeRunningPerTrx:
        map.lo_count = layout.trx_count();
        break;
    case LoTopology::LockedPerTrp:
        map.lo_count = layout.n_trp;
        break;
    case LoTopology::LockedPerCluster:
        map.lo_count = layout.cluster_count();
        break;
    case LoTopology::LockedGlobal:
        map.lo_count = 1;
        break;
    }
    return map;
}

LoMap independent_los(std::size_t count)
{
    LoMap map;
    map.lo_of_trx.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        map.lo_of_trx[i] = i;
    map.lo_count = count;
    return map;
}

PhaseStreams::PhaseStreams(std::uint64_t master_seed, std::uint64_t trial, StreamTag tag, std::size_t lo_count)
{
    streams_.reserve(lo_count);
    for (std::size_t lo = 0; lo < lo_count; ++lo)
        streams_.push_back(make_stream(master_seed, trial, tag, lo));
}

PhaseState init_phases(std::size_t lo_count, double sample_time, double sigma2, PhaseStreams &streams)
{
    if (streams.size() < lo_count)
        throw DimensionError("init_phases: fewer random streams than LOs");
    if (sigma2 < 0.0)
        throw ConfigError("init_phases: phase-noise variance must be non-negative");
    PhaseState s;
    s.sample_time = sample_time;
    s.sigma2 = sigma2;
    s.phases.resize(lo_count);
    for (std::size_t lo = 0; lo < lo_count; ++lo)
        s.phases[lo] = uniform(streams[lo], 0.0, 2.0 * std::numbers::pi);
    return s;
}

PhaseState step(const PhaseState &state, PhaseStreams &streams)
{
    if (streams.size() < state.phases.size())
        throw DimensionError("step: fewer random streams than LOs");
    PhaseState next = state;
    ++next.n;
    if (state.sigma2 == 0.0)
        return next;
    std::normal_distribution<double> increment(0.0, std::sqrt(state.sigma2));
    for (std::size_t lo = 0; lo < next.phases.size(); ++lo)
        next.phases[lo] += increment(streams[lo]);
    return next;
}

} // namespace tddmimo
