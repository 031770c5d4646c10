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

#include "tddmimo/hw_model.hpp"
#include "tddmimo/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tddmimo
{

void FrequencyGrid::validate() const
{
    if (subcarriers < 1)
        throw ConfigError("FrequencyGrid: number of subcarriers must be positive");
    if (subcarriers != 1 && subcarriers % 2 != 0)
        throw ConfigError("FrequencyGrid: number of subcarriers must be 1 or even");
    if (!(spacing_hz > 0.0))
        throw ConfigError("FrequencyGrid: subcarrier spacing must be positive");
    if (!(carrier_hz > subcarriers * spacing_hz / 2.0))
        throw ConfigError("FrequencyGrid: carrier must exceed half the occupied bandwidth");
}

std::size_t FrequencyGrid::offset(int l) const
{
    if (!contains(l))
        throw std::out_of_range("subcarrier index " + std::to_string(l) + " outside [" +
                                std::to_string(first_index()) + ", " + std::to_string(last_index()) + "]");
    return static_cast<std::size_t>(l - first_index());
}

FrequencyGrid flat_grid()
{
    return FrequencyGrid{15e3, 1, 3.5e9};
}

std::string_view to_string(SignModel model)
{
    return model == SignModel::Correct ? "correct" : "inaccurate";
}

SignModel parse_sign_model(std::string_view text)
{
    if (text == "correct")
        return SignModel::Correct;
    if (text == "inaccurate")
        return SignModel::Inaccurate;
    throw ConfigError("unknown sign model '" + std::string(text) + "' (expected correct|inaccurate)");
}

TrxChain TrxChain::ideal(const FrequencyGrid &grid, double phi, double tau)
{
    const auto n = static_cast<std::size_t>(grid.subcarriers);
    TrxChain c;
    c.phi = phi;
    c.tau = tau;
    c.tx_lf.assign(n, 1.0);
    c.rx_lf.assign(n, 1.0);
    c.tx_rf.assign(n, 1.0);
    c.rx_rf.assign(n, 1.0);
    return c;
}

void TrxChain::validate(const FrequencyGrid &grid) const
{
    const auto n = static_cast<std::size_t>(grid.subcarriers);
    if (tx_lf.size() != n || rx_lf.size() != n || tx_rf.size() != n || rx_rf.size() != n)
        throw DimensionError("TrxChain: transfer-value sequences must have one entry per subcarrier");
}

cplx tx_transfer(const TrxChain &chain, const FrequencyGrid &grid, int l, SignModel)
{
    const auto k = grid.offset(l);
    chain.validate(grid);
    const double f = grid.baseband_frequency(l);
    const double phase = (chain.phi + chain.dphi_t) - 2.0 * std::numbers::pi * f * (chain.tau + chain.dtau_t);
    return std::polar(1.0, phase) * chain.tx_lf[k] * chain.tx_rf[k];
}

cplx rx_transfer(const TrxChain &chain, const FrequencyGrid &grid, int l, SignModel model)
{
    const auto k = grid.offset(l);
    chain.validate(grid);
    const double f = grid.baseband_frequency(l);
    const double lo = chain.phi + chain.dphi_r;
    const double lo_sign = model == SignModel::Correct ? -1.0 : 1.0;
    const double phase = lo_sign * lo + 2.0 * std::numbers::pi * f * (chain.tau + chain.dtau_r);
    return std::polar(1.0, phase) * chain.rx_lf[k] * chain.rx_rf[k];
}

} // namespace tddmimo
