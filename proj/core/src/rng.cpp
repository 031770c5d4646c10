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

#include "tddmimo/rng.hpp"

namespace tddmimo
{

Engine make_stream(std::uint64_t master_seed, std::uint64_t trial, StreamTag tag, std::uint64_t index)
{
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    const auto t = static_cast<std::uint64_t>(tag);
    std::seed_seq seq{lo(master_seed), hi(master_seed), lo(trial), hi(trial), lo(t), lo(index), hi(index)};
    return Engine(seq);
}

} // namespace tddmimo
