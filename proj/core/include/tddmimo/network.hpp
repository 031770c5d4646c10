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

#ifndef TDDMIMO_NETWORK_HPP
#define TDDMIMO_NETWORK_HPP

#include <cstddef>

namespace tddmimo
{

// Base-station side of the network: TRPs grouped into clusters, TRXs numbered
// trp * trx_per_trp + local index.
struct NetworkLayout
{
    std::size_t n_trp = 1;
    std::size_t trx_per_trp = 1;
    std::size_t cluster_size = 1; // TRPs per cluster

    std::size_t trx_count() const { return n_trp * trx_per_trp; }
    std::size_t cluster_count() const { return cluster_size == 0 ? 0 : n_trp / cluster_size; }
    std::size_t trx_per_cluster() const { return cluster_size * trx_per_trp; }

    std::size_t trp_of_trx(std::size_t trx) const { return trx / trx_per_trp; }
    std::size_t cluster_of_trp(std::size_t trp) const { return trp / cluster_size; }
    std::size_t cluster_of_trx(std::size_t trx) const { return cluster_of_trp(trp_of_trx(trx)); }

    // First TRX of a cluster; it doubles as the calibration reference.
    std::size_t cluster_first_trx(std::size_t cluster) const { return cluster * trx_per_cluster(); }

    // Throws ConfigError.
    void validate() const;
};

} // namespace tddmimo

#endif
