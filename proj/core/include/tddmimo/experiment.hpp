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

#ifndef TDDMIMO_EXPERIMENT_HPP
#define TDDMIMO_EXPERIMENT_HPP

#include "tddmimo/calibration.hpp"
#include "tddmimo/channel_model.hpp"
#include "tddmimo/estimation.hpp"
#include "tddmimo/hw_model.hpp"
#include "tddmimo/phase_noise.hpp"
#include "tddmimo/precoding.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tddmimo
{

std::string_view version();

struct RunConfig
{
    Scenario scenario = desk_preset();
    SignModel model = SignModel::Correct;
    LoTopology topology = LoTopology::LockedPerCluster;
    CalibrationMode calibration = CalibrationMode::Relative;
    EstimationMode estimation = EstimationMode::Dmrs;
    MetricMode metric = MetricMode::Sinr; // metric reported on the console; the CSV carries all
    PowerNormalization normalization = PowerNormalization::PerColumn;
    int horizon = 200;
    int trials = 100;
    std::uint64_t seed = 1;
    int threads = 1;

    // Estimation/measurement noise; zero reproduces perfect SRS, DMRS and calibration.
    double srs_noise_std = 0.0;
    double dmrs_noise_std = 0.0;
    double calibration_noise_std = 0.0;
    double max_condition = default_max_condition;

    void validate() const;
};

// Reads a run configuration document (see README for keys) on top of base.
// Unknown keys throw ConfigError. The optional "sweep" array is ignored here.
RunConfig run_config_from_json(const nlohmann::json &j, RunConfig base = {});
nlohmann::json to_json(const RunConfig &cfg);

// One row per (trial, step). SINR columns are 10 log10 of the mean over UEs of the
// linear value; eff_sinr is the post-detection SINR 1 / d_k.
struct MetricsRow
{
    int trial = 0;
    int step = 0;
    double time_ms = 0.0;
    double mean_sinr_db = 0.0;
    double mean_eff_sinr_db = 0.0;
    double mean_distortion = 0.0;
    double mean_se = 0.0;
    std::size_t ota_cost = 0; // OTA calibration slots spent up to the end of the step, all clusters
    long staleness = 0;       // steps since the calibration in use was captured
    std::uint64_t channel_hash = 0;
};

struct MetricsFrame
{
    int trials = 0;
    int horizon = 0;
    std::vector<MetricsRow> rows; // trial-major

    const MetricsRow &at(int trial, int step) const
    {
        return rows[static_cast<std::size_t>(trial) * static_cast<std::size_t>(horizon) + static_cast<std::size_t>(step)];
    }
};

// Time-stepped Monte-Carlo run. Per trial: draw channels and LO phases, sound and
// calibrate at n = 0; per step: advance the phases (n > 0), rebuild the true UL/DL
// channels from the transceiver chains, re-sound on the SRS schedule, apply the
// (possibly stale) calibration, zero-force per cluster on the estimate, evaluate on the
// true channel, detect per estimation mode and record; then recalibrate when the
// calibration period has elapsed. Deterministic for a fixed seed.
MetricsFrame run(const RunConfig &cfg);

// Per-step aggregation over trials: linear means with 95% confidence half-widths.
struct StepSummary
{
    std::vector<double> sinr_db;
    std::vector<double> sinr_ci_lo_db;
    std::vector<double> sinr_ci_hi_db;
    std::vector<double> eff_sinr_db;
    std::vector<double> eff_sinr_ci_lo_db;
    std::vector<double> eff_sinr_ci_hi_db;
    std::vector<double> distortion;
    std::vector<double> distortion_ci95;
    std::vector<double> se;
    std::vector<double> se_ci95;
};

StepSummary summarize(const MetricsFrame &frame);

std::string csv_header();

// Header plus one row per (trial, step); numbers with 9 significant digits.
void emit_csv(const MetricsFrame &frame, const std::filesystem::path &path, double sample_time = 100e-6);
void emit_summary_csv(const MetricsFrame &frame, const std::filesystem::path &path, double sample_time = 100e-6);

struct SweepTuple
{
    SignModel model = SignModel::Correct;
    LoTopology topology = LoTopology::FreeRunningPerTrx;
    CalibrationMode calibration = CalibrationMode::Relative;
    int calibration_period = 0;
    EstimationMode estimation = EstimationMode::Dmrs;
};

std::string tuple_name(const SweepTuple &t);
RunConfig apply_tuple(RunConfig cfg, const SweepTuple &t);

// inaccurate/free-running, correct/free-running + blind, correct/free-running + DMRS,
// correct/locked + DMRS.
std::vector<SweepTuple> headline_sweep();

std::vector<SweepTuple> sweep_from_json(const nlohmann::json &j);

// Runs every tuple with the base seed (paired channel and phase draws) and writes
// <out>/<tuple_name>.csv and <tuple_name>_summary.csv. Returns the per-trial CSV paths.
std::vector<std::filesystem::path> run_matrix(const RunConfig &base, std::span<const SweepTuple> sweep,
                                              const std::filesystem::path &out_dir);

// JSON manifest with config hash, seed, version and produced files.
void write_manifest(const std::filesystem::path &path, const nlohmann::json &config, std::uint64_t seed,
                    std::span<const std::filesystem::path> files);

std::uint64_t fnv1a(std::string_view bytes);

} // namespace tddmimo

#endif
