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

#ifndef TDDMIMO_CHANNEL_MODEL_HPP
#define TDDMIMO_CHANNEL_MODEL_HPP

#include "tddmimo/hw_model.hpp"
#include "tddmimo/network.hpp"
#include "tddmimo/rng.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string_view>

namespace tddmimo
{

enum class Fading
{
    Rayleigh, // iid CN(0, 1)
    Unit      // every in-cluster coefficient equal to 1 (toy two-path experiments)
};

std::string_view to_string(Fading fading);
Fading parse_fading(std::string_view text);

// Timing of reference-signal and calibration events, in time steps.
struct Schedule
{
    int calibration_period = 0; // 0: calibrate once at n = 0
    int srs_period = 1;         // 0: sound once at n = 0
    int dmrs_pilots = 1;        // |P|
    int srs_repetitions = 1;    // orthogonal SRS repetitions averaged per sounding
};

struct Scenario
{
    NetworkLayout layout{4, 4, 2};
    std::size_t n_ue = 8;
    double snr_dl_db = 20.0;
    double sample_time = 100e-6; // T_s
    double sigma2 = 0.01;        // base-station LO increment variance
    double ue_sigma2 = 0.01;     // UE LO increment variance
    double inter_cluster_gain = 0.0;
    Fading fading = Fading::Rayleigh;
    Schedule schedule;

    // Linear noise power relative to unit TX power per UE stream.
    double noise_power() const;

    std::size_t ues_per_cluster() const { return n_ue / layout.cluster_count(); }
    std::size_t cluster_of_ue(std::size_t ue) const { return ue / ues_per_cluster(); }
    std::size_t cluster_first_ue(std::size_t cluster) const { return cluster * ues_per_cluster(); }

    // Throws ConfigError.
    void validate() const;
};

// 2 clusters x 2 TRPs x 4 TRXs, 8 UEs.
Scenario desk_preset();

// 16 TRPs x 64 TRXs, 4 TRPs per cluster, 160 UEs.
Scenario paper_preset();

Scenario preset_by_name(std::string_view name);

// Reads the keys of a "scenario" JSON object on top of base. Unknown keys are rejected.
Scenario scenario_from_json(const nlohmann::json &j, Scenario base);
nlohmann::json to_json(const Scenario &s);

// Propagation channels, static over a run.
struct ChannelSet
{
    Eigen::MatrixXcd ue;  // n_ue x n_trx, TRP <-> UE (H_1)
    Eigen::MatrixXcd trp; // n_trx x n_trx, TRX <-> TRX (H_0), symmetric
};

// In-cluster UE links iid CN(0, 1) (or 1 for Fading::Unit), links to other clusters scaled
// by inter_cluster_gain. The TRX-TRX matrix draws its upper triangle and mirrors it.
ChannelSet draw_channels(const Scenario &scenario, Engine &rng);

// FNV-1a over the raw coefficients; pairs runs that must share channel realizations.
std::uint64_t channel_hash(const ChannelSet &channels);

} // namespace tddmimo

#endif
