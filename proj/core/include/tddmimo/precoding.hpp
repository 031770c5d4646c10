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

#ifndef TDDMIMO_PRECODING_HPP
#define TDDMIMO_PRECODING_HPP

#include "tddmimo/estimation.hpp"
#include "tddmimo/hw_model.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string_view>
#include <vector>

namespace tddmimo
{

enum class PowerNormalization
{
    PerColumn, // every UE stream has unit power
    SumPower   // ||W||_F^2 = number of UEs
};

std::string_view to_string(PowerNormalization n);
PowerNormalization parse_power_normalization(std::string_view text);

struct Precoder
{
    Eigen::MatrixXcd weights;          // n_trx x n_ue
    std::vector<double> column_norms;  // before normalization
    PowerNormalization normalization = PowerNormalization::PerColumn;
};

inline constexpr double default_max_condition = 1e8;

// W = H^H (H H^H)^{-1} for a UE x TRX downlink estimate, computed from a QR factorization of H^H.
// Throws PrecodingError when n_trx < n_ue or cond(H) > max_condition; the error lists
// the UEs that carry the weakest singular direction.
Precoder zero_forcing(const Eigen::MatrixXcd &h_dl_est, PowerNormalization normalization = PowerNormalization::PerColumn,
                      double max_condition = default_max_condition);

// a_k = [H W]_kk on the true channel.
EffectiveChannel effective_channel(const Eigen::MatrixXcd &h_dl_true, const Precoder &w);

enum class MetricMode
{
    Sinr,      // |a_k|^2 / (interference + noise)
    Distortion // E|x_hat - x|^2 after single-tap equalization by a_hat_k
};

std::string_view to_string(MetricMode m);
MetricMode parse_metric_mode(std::string_view text);

// Per-UE metric. Distortion mode:
//   d_k = |1 - a_k / a_hat_k|^2 + (sum_{j != k} |[HW]_kj|^2 + noise) / |a_hat_k|^2
// Throws DetectionError if a_hat_k == 0.
std::vector<double> detection_metrics(const Eigen::MatrixXcd &h_dl_true, const Precoder &w, const EffectiveChannel &a_hat,
                                      double noise_power, MetricMode mode);

// Same metrics from the precoded product G = H W, whose diagonal holds a_k.
std::vector<double> detection_metrics(const Eigen::MatrixXcd &hw, const EffectiveChannel &a_hat, double noise_power,
                                      MetricMode mode);

// Post-detection SINR 1/d and the rate proxy log2(1 + 1/d) (zero once d >= 1).
inline double effective_sinr(double distortion) { return 1.0 / distortion; }
double spectral_efficiency_proxy(double distortion);

// Phases (degrees) of the conjugate-precoding example: an RX signal with global phase
// rx_global is measured relative to the LO, conjugated and sent back through the TX chain.
// With reuse_measured_deg the old measurement is precoded instead of a fresh one.
struct PhasorWalkthrough
{
    double lo_deg = 0.0;
    double rx_global_deg = 0.0;
    double measured_deg = 0.0;
    double precoded_deg = 0.0;
    double tx_global_deg = 0.0;
};

PhasorWalkthrough conjugate_precoding_walkthrough(double rx_global_deg, double lo_deg,
                                                  std::optional<double> reuse_measured_deg = std::nullopt,
                                                  SignModel model = SignModel::Correct);

} // namespace tddmimo

#endif
