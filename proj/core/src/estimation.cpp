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

#include "tddmimo/estimation.hpp"
#include "tddmimo/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace tddmimo
{

std::string_view to_string(EstimationMode mode)
{
    switch (mode)
    {
    case EstimationMode::Dmrs:
        return "dmrs";
    case EstimationMode::Blind:
        return "blind";
    case EstimationMode::Genie:
        return "genie";
    }
    return "?";
}

EstimationMode parse_estimation_mode(std::string_view text)
{
    for (auto m : {EstimationMode::Dmrs, EstimationMode::Blind, EstimationMode::Genie})
        if (text == to_string(m))
            return m;
    throw ConfigError("unknown estimation mode '" + std::string(text) + "' (expected dmrs|blind|genie)");
}

Eigen::MatrixXcd srs_estimate(const Eigen::MatrixXcd &h_ul_true, double noise_std, int n_srs, Engine &rng)
{
    if (n_srs < 1)
        throw ConfigError("srs_estimate: at least one SRS repetition required");
    Eigen::MatrixXcd est = h_ul_true;
    if (noise_std == 0.0)
        return est;
    const double variance = noise_std * noise_std / n_srs;
    for (Eigen::Index c = 0; c < est.cols(); ++c)
        for (Eigen::Index r = 0; r < est.rows(); ++r)
            est(r, c) += complex_gaussian(rng, variance);
    return est;
}

EffectiveChannel dmrs_estimate(const EffectiveChannel &a_true, double noise_std, int n_pilots, Engine &rng)
{
    if (n_pilots < 1)
        throw ConfigError("dmrs_estimate: at least one DMRS required");
    EffectiveChannel est = a_true;
    if (noise_std == 0.0)
        return est;
    const double variance = noise_std * noise_std / n_pilots;
    for (auto &a : est.a)
        a += complex_gaussian(rng, variance);
    return est;
}

double dmrs_effective_sinr(double sinr, int n_pilots)
{
    if (!(sinr > 0.0))
        throw ConfigError("dmrs_effective_sinr: SINR must be positive");
    if (n_pilots < 1)
        throw ConfigError("dmrs_effective_sinr: at least one DMRS required");
    const double p = n_pilots;
    return p * sinr / (p + 1.0 + 1.0 / sinr);
}

double dmrs_monte_carlo_sinr(double sinr, int n_pilots, std::size_t realizations, Engine &rng,
                             std::size_t symbols_per_realization)
{
    if (!(sinr > 0.0) || n_pilots < 1 || realizations == 0 || symbols_per_realization == 0)
        throw ConfigError("dmrs_monte_carlo_sinr: invalid arguments");

    const double n0 = 1.0 / sinr;
    const double r = 1.0 / std::sqrt(2.0);
    const std::array<cplx, 4> qpsk{cplx{r, r}, cplx{-r, r}, cplx{-r, -r}, cplx{r, -r}};
    std::uniform_int_distribution<int> pick(0, 3);

    // Bayesian shrinkage of the LS estimate for a ~ CN(0, 1)
    const double shrink = 1.0 / (1.0 + n0 / n_pilots);

    double signal = 0.0;
    double distortion = 0.0;
    for (std::size_t i = 0; i < realizations; ++i)
    {
        const cplx a = complex_gaussian(rng);
        cplx ls = 0.0;
        for (int p = 0; p < n_pilots; ++p)
        {
            const cplx pilot = qpsk[static_cast<std::size_t>(pick(rng))];
            const cplx y = a * pilot + complex_gaussian(rng, n0);
            ls += y / pilot;
        }
        const cplx a_hat = shrink * ls / static_cast<double>(n_pilots);

        for (std::size_t s = 0; s < symbols_per_realization; ++s)
        {
            const cplx x = qpsk[static_cast<std::size_t>(pick(rng))];
            const cplx y = a * x + complex_gaussian(rng, n0);
            signal += std::norm(a_hat * x);
            distortion += std::norm(y - a_hat * x);
        }
    }
    return signal / distortion;
}

EffectiveChannel blind_estimate(const EffectiveChannel &a_true)
{
    EffectiveChannel est;
    est.a.reserve(a_true.size());
    for (const auto &a : a_true.a)
        est.a.emplace_back(std::abs(a), 0.0);
    return est;
}

} // namespace tddmimo
