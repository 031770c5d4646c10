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

#include "tddmimo/channel_model.hpp"
#include "tddmimo/errors.hpp"

#include <cmath>
#include <cstring>
#include <string>

namespace tddmimo
{

std::string_view to_string(Fading fading)
{
    return fading == Fading::Rayleigh ? "rayleigh" : "unit";
}

Fading parse_fading(std::string_view text)
{
    if (text == "rayleigh")
        return Fading::Rayleigh;
    if (text == "unit")
        return Fading::Unit;
    throw ConfigError("unknown fading '" + std::string(text) + "' (expected rayleigh|unit)");
}

double Scenario::noise_power() const
{
    return std::pow(10.0, -snr_dl_db / 10.0);
}

void Scenario::validate() const
{
    layout.validate();
    if (n_ue == 0)
        throw ConfigError("scenario: n_ue must be positive");
    if (n_ue % layout.cluster_count() != 0)
        throw ConfigError("scenario: n_ue must be divisible by the number of clusters");
    if (!(sample_time > 0.0))
        throw ConfigError("scenario: sample_time must be positive");
    if (sigma2 < 0.0 || ue_sigma2 < 0.0)
        throw ConfigError("scenario: phase-noise variances must be non-negative");
    if (inter_cluster_gain < 0.0 || inter_cluster_gain > 1.0)
        throw ConfigError("scenario: inter_cluster_gain must lie in [0, 1]");
    if (schedule.calibration_period < 0 || schedule.srs_period < 0)
        throw ConfigError("scenario: schedule periods must be non-negative");
    if (schedule.dmrs_pilots < 1 || schedule.srs_repetitions < 1)
        throw ConfigError("scenario: dmrs_pilots and srs_repetitions must be at least 1");
}

Scenario desk_preset()
{
    Scenario s;
    s.layout = NetworkLayout{4, 4, 2};
    s.n_ue = 8;
    return s;
}

Scenario paper_preset()
{
    Scenario s;
    s.layout = NetworkLayout{16, 64, 4};
    s.n_ue = 160;
    return s;
}

Scenario preset_by_name(std::string_view name)
{
    if (name == "desk")
        return desk_preset();
    if (name == "paper")
        return paper_preset();
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected desk|paper)");
}

Scenario scenario_from_json(const nlohmann::json &j, Scenario s)
{
    if (!j.is_object())
        throw ConfigError("scenario: expected a JSON object");
    try
    {
        for (const auto &[key, value] : j.items())
        {
            if (key == "n_trp")
                s.layout.n_trp = value.get<std::size_t>();
            else if (key == "trx_per_trp")
                s.layout.trx_per_trp = value.get<std::size_t>();
            else if (key == "cluster_size")
                s.layout.cluster_size = value.get<std::size_t>();
            else if (key == "n_ue")
                s.n_ue = value.get<std::size_t>();
            else if (key == "snr_dl_db")
                s.snr_dl_db = value.get<double>();
            else if (key == "sample_time_s")
                s.sample_time = value.get<double>();
            else if (key == "sigma2")
                s.sigma2 = value.get<double>();
            else if (key == "ue_sigma2")
                s.ue_sigma2 = value.get<double>();
            else if (key == "inter_cluster_gain")
                s.inter_cluster_gain = value.get<double>();
            else if (key == "fading")
                s.fading = parse_fading(value.get<std::string>());
            else if (key == "calibration_period")
                s.schedule.calibration_period = value.get<int>();
            else if (key == "srs_period")
                s.schedule.srs_period = value.get<int>();
            else if (key == "dmrs_pilots")
                s.schedule.dmrs_pilots = value.get<int>();
            else if (key == "srs_repetitions")
                s.schedule.srs_repetitions = value.get<int>();
            else
                throw ConfigError("scenario: unknown key '" + key + "'");
        }
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    s.validate();
    return s;
}

nlohmann::json to_json(const Scenario &s)
{
    return {{"n_trp", s.layout.n_trp},
            {"trx_per_trp", s.layout.trx_per_trp},
            {"cluster_size", s.layout.cluster_size},
            {"n_ue", s.n_ue},
            {"snr_dl_db", s.snr_dl_db},
            {"sample_time_s", s.sample_time},
            {"sigma2", s.sigma2},
            {"ue_sigma2", s.ue_sigma2},
            {"inter_cluster_gain", s.inter_cluster_gain},
            {"fading", std::string(to_string(s.fading))},
            {"calibration_period", s.schedule.calibration_period},
            {"srs_period", s.schedule.srs_period},
            {"dmrs_pilots", s.schedule.dmrs_pilots},
            {"srs_repetitions", s.schedule.srs_repetitions}};
}

ChannelSet draw_channels(const Scenario &scenario, Engine &rng)
{
    scenario.validate();
    const auto &layout = scenario.layout;
    const auto n_trx = static_cast<Eigen::Index>(layout.trx_count());
    const auto n_ue = static_cast<Eigen::Index>(scenario.n_ue);
    const bool unit = scenario.fading == Fading::Unit;

    ChannelSet ch;
    ch.ue.resize(n_ue, n_trx);
    for (Eigen::Index k = 0; k < n_ue; ++k)
    {
        const auto serving = scenario.cluster_of_ue(static_cast<std::size_t>(k));
        for (Eigen::Index i = 0; i < n_trx; ++i)
        {
            const bool in_cluster = layout.cluster_of_trx(static_cast<std::size_t>(i)) == serving;
            const double gain = in_cluster ? 1.0 : scenario.inter_cluster_gain;
            // draw regardless of gain so that g_ic does not shift the stream
            const cplx h = unit ? cplx{1.0, 0.0} : complex_gaussian(rng);
            ch.ue(k, i) = gain * h;
        }
    }

    ch.trp.resize(n_trx, n_trx);
    for (Eigen::Index i = 0; i < n_trx; ++i)
        for (Eigen::Index j = i; j < n_trx; ++j)
        {
            const cplx h = unit ? cplx{1.0, 0.0} : complex_gaussian(rng);
            ch.trp(i, j) = h;
            ch.trp(j, i) = h;
        }
    return ch;
}

std::uint64_t channel_hash(const ChannelSet &channels)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&h](const Eigen::MatrixXcd &m) {
        const auto *bytes = reinterpret_cast<const unsigned char *>(m.data());
        const std::size_t n = static_cast<std::size_t>(m.size()) * sizeof(cplx);
        for (std::size_t b = 0; b < n; ++b)
        {
            h ^= bytes[b];
            h *= 0x100000001b3ull;
        }
    };
    feed(channels.ue);
    feed(channels.trp);
    return h;
}

} // namespace tddmimo
