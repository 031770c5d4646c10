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

#ifndef TDDMIMO_ESTIMATION_HPP
#define TDDMIMO_ESTIMATION_HPP

#include "tddmimo/hw_model.hpp"
#include "tddmimo/rng.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <string_view>
#include <vector>

namespace tddmimo
{

// a_k = [H_DL W]_kk for each simultaneously served UE.
struct EffectiveChannel
{
    std::vector<cplx> a;

    std::size_t size() const { return a.size(); }
};

enum class EstimationMode
{
    Dmrs,  // UE estimates a_k from precoded pilots
    Blind, // UE assumes a_k real positive, knows |a_k|
    Genie  // UE knows a_k exactly
};

std::string_view to_string(EstimationMode mode);
EstimationMode parse_estimation_mode(std::string_view text);

// UL channel estimate from n_srs orthogonal SRS repetitions: h + CN(0, noise_std^2 / n_srs).
Eigen::MatrixXcd srs_estimate(const Eigen::MatrixXcd &h_ul_true, double noise_std, int n_srs, Engine &rng);

// Per-UE scalar estimate from |P| DMRS: a_k + CN(0, noise_std^2 / |P|).
EffectiveChannel dmrs_estimate(const EffectiveChannel &a_true, double noise_std, int n_pilots, Engine &rng);

// SINR after channel-estimation penalty: |P| SINR / (|P| + 1 + 1/SINR). Linear in, linear out.
double dmrs_effective_sinr(double sinr, int n_pilots);

// Symbol-level check of dmrs_effective_sinr: Rayleigh a ~ CN(0, 1), |P| QPSK pilots
// averaged, MMSE-scaled estimate, QPSK data. Returns E|a_hat x|^2 / E|y - a_hat x|^2.
double dmrs_monte_carlo_sinr(double sinr, int n_pilots, std::size_t realizations, Engine &rng,
                             std::size_t symbols_per_realization = 12);

// |a_k|: correct magnitude, phase assumed zero.
EffectiveChannel blind_estimate(const EffectiveChannel &a_true);

} // namespace tddmimo

#endif
