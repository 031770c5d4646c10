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

#include "tddmimo/calibration.hpp"
#include "tddmimo/errors.hpp"

#include <fmt/format.h>

#include <string>

namespace tddmimo
{

std::string_view to_string(CalibrationMode mode)
{
    switch (mode)
    {
    case CalibrationMode::None:
        return "none";
    case CalibrationMode::Relative:
        return "relative";
    case CalibrationMode::Perfect:
        return "perfect";
    }
    return "?";
}

CalibrationMode parse_calibration_mode(std::string_view text)
{
    for (auto m : {CalibrationMode::None, CalibrationMode::Relative, CalibrationMode::Perfect})
        if (text == to_string(m))
            return m;
    throw ConfigError("unknown calibration mode '" + std::string(text) + "' (expected none|relative|perfect)");
}

cplx measure_relative_factor(const TrxChain &ref_slot1, const TrxChain &other_slot1, const TrxChain &ref_slot2,
                             const TrxChain &other_slot2, cplx h0, SignModel model, double noise_std, Engine &rng,
                             const Subcarrier &sc, double floor)
{
    const auto &g = sc.grid;
    cplx y_other_ref = rx_transfer(other_slot1, g, sc.l, model) * h0 * tx_transfer(ref_slot1, g, sc.l, model);
    cplx y_ref_other = rx_transfer(ref_slot2, g, sc.l, model) * h0 * tx_transfer(other_slot2, g, sc.l, model);
    if (noise_std > 0.0)
    {
        y_other_ref += complex_gaussian(rng, noise_std * noise_std);
        y_ref_other += complex_gaussian(rng, noise_std * noise_std);
    }
    if (std::abs(y_other_ref) < floor)
        throw CalibrationError(fmt::format("calibration measurement below floor (|y| = {:.3e})", std::abs(y_other_ref)),
                               0);
    return y_ref_other / y_other_ref;
}

cplx measure_relative_factor(const TrxChain &ref, const TrxChain &other, cplx h0, SignModel model, double noise_std,
                             Engine &rng, const Subcarrier &sc, double floor)
{
    return measure_relative_factor(ref, other, ref, other, h0, model, noise_std, rng, sc, floor);
}

CalibrationState calibrate_cluster(std::span<const TrxChain> chains, const Eigen::MatrixXcd &h0, SignModel model,
                                   double noise_std, Engine &rng, long n, const Subcarrier &sc, double floor)
{
    if (chains.empty())
        throw DimensionError("calibrate_cluster: cluster has no TRX");
    const auto count = static_cast<Eigen::Index>(chains.size());
    if (h0.rows() != count || h0.cols() != count)
        throw DimensionError(fmt::format("calibrate_cluster: H0 is {}x{} for {} TRXs", h0.rows(), h0.cols(), count));

    CalibrationState state;
    state.captured_at = n;
    state.factors.assign(chains.size(), cplx{1.0, 0.0});
    for (std::size_t i = 1; i < chains.size(); ++i)
    {
        try
        {
            state.factors[i] = measure_relative_factor(chains[0], chains[i], h0(0, static_cast<Eigen::Index>(i)),
                                                       model, noise_std, rng, sc, floor);
        }
        catch (const CalibrationError &e)
        {
            throw CalibrationError(fmt::format("TRX {}: {}", i, e.what()), i);
        }
    }
    state.ota_slots = 2 * (chains.size() - 1);
    return state;
}

Eigen::MatrixXcd apply_calibration(const Eigen::MatrixXcd &h_ul_est, const CalibrationState &cal)
{
    if (static_cast<std::size_t>(h_ul_est.cols()) != cal.factors.size())
        throw DimensionError(fmt::format("apply_calibration: {} columns but {} calibration factors", h_ul_est.cols(),
                                         cal.factors.size()));
    Eigen::MatrixXcd out = h_ul_est;
    for (Eigen::Index i = 0; i < out.cols(); ++i)
        out.col(i) *= cal.factors[static_cast<std::size_t>(i)];
    return out;
}

Eigen::MatrixXcd apply_ue_calibration(const Eigen::MatrixXcd &h, const CalibrationState &cal)
{
    if (static_cast<std::size_t>(h.rows()) != cal.ue_factors.size())
        throw DimensionError(fmt::format("apply_ue_calibration: {} rows but {} UE factors", h.rows(),
                                         cal.ue_factors.size()));
    Eigen::MatrixXcd out = h;
    for (Eigen::Index k = 0; k < out.rows(); ++k)
        out.row(k) *= cal.ue_factors[static_cast<std::size_t>(k)];
    return out;
}

cplx ue_reciprocity_factor(const TrxChain &ref, const TrxChain &ue, SignModel model, const Subcarrier &sc)
{
    const auto &g = sc.grid;
    return tx_transfer(ref, g, sc.l, model) * rx_transfer(ue, g, sc.l, model) /
           (rx_transfer(ref, g, sc.l, model) * tx_transfer(ue, g, sc.l, model));
}

} // namespace tddmimo
