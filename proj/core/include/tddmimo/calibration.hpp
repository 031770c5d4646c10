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

#ifndef TDDMIMO_CALIBRATION_HPP
#define TDDMIMO_CALIBRATION_HPP

#include "tddmimo/hw_model.hpp"
#include "tddmimo/rng.hpp"

#include <Eigen/Dense>

#include <span>
#include <string_view>
#include <vector>

namespace tddmimo
{

enum class CalibrationMode
{
    None,     // DL estimate = UL estimate
    Relative, // c_i per TRX against the cluster reference
    Perfect   // c_i and the UE factor gamma_UE
};

std::string_view to_string(CalibrationMode mode);
CalibrationMode parse_calibration_mode(std::string_view text);

// Subcarrier at which transfer values are evaluated (the flat experiment uses l = 0).
struct Subcarrier
{
    FrequencyGrid grid = flat_grid();
    int l = 0;
};

inline constexpr double default_measurement_floor = 1e-12;

// Result of one calibration event of a cluster. factors[0] belongs to the reference TRX
// and is exactly 1.
struct CalibrationState
{
    std::vector<cplx> factors;    // c_i, one per TRX of the cluster
    std::vector<cplx> ue_factors; // gamma_UE, only filled in perfect mode
    long captured_at = 0;         // time index of the event
    std::size_t ota_slots = 0;    // OTA calibration signals used by the event

    long staleness(long n) const { return n - captured_at; }
};

// Bidirectional OTA measurement between a reference TRX and another TRX:
//   y_other,ref = r_other H0 t_ref + w1      (slot 1)
//   y_ref,other = r_ref H0 t_other + w2      (slot 2)
// and c = y_ref,other / y_other,ref. Both slots see the same chain state.
// Throws CalibrationError if |y_other,ref| is below floor.
cplx measure_relative_factor(const TrxChain &ref, const TrxChain &other, cplx h0, SignModel model, double noise_std,
                             Engine &rng, const Subcarrier &sc = {}, double floor = default_measurement_floor);

// Same measurement with the chains allowed to change between the two slots
// (intra-calibration drift stress case).
cplx measure_relative_factor(const TrxChain &ref_slot1, const TrxChain &other_slot1, const TrxChain &ref_slot2,
                             const TrxChain &other_slot2, cplx h0, SignModel model, double noise_std, Engine &rng,
                             const Subcarrier &sc = {}, double floor = default_measurement_floor);

// Calibrates every TRX of a cluster against chains[0]. h0 is the cluster's TRX-TRX
// propagation block (chains.size() square). Costs 2 (N - 1) OTA slots.
CalibrationState calibrate_cluster(std::span<const TrxChain> chains, const Eigen::MatrixXcd &h0, SignModel model,
                                   double noise_std, Engine &rng, long n, const Subcarrier &sc = {},
                                   double floor = default_measurement_floor);

// Scales column i (TRX i) of a UE x TRX uplink estimate by c_i.
Eigen::MatrixXcd apply_calibration(const Eigen::MatrixXcd &h_ul_est, const CalibrationState &cal);

// Scales row k (UE k) by gamma_UE,k. Requires ue_factors.size() == rows.
Eigen::MatrixXcd apply_ue_calibration(const Eigen::MatrixXcd &h, const CalibrationState &cal);

// gamma_UE = t_ref r_UE / (r_ref t_UE)
cplx ue_reciprocity_factor(const TrxChain &ref, const TrxChain &ue, SignModel model, const Subcarrier &sc = {});

} // namespace tddmimo

#endif
