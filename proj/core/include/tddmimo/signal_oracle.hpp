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

#ifndef TDDMIMO_SIGNAL_ORACLE_HPP
#define TDDMIMO_SIGNAL_ORACLE_HPP

#include "tddmimo/hw_model.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tddmimo
{

// Full passband transmission chain used as an independent check of the TX/RX transfer
// functions:
//
//   x_l -> OFDM -> Re/Im -> h_t,LF -> I/Q up-conversion (f_c, phi_t) -> h_t,RF -> h -> h_r,RF
//       -> down-conversion (f_c, phi_r) -> h_r,LF -> demodulation window [tau_r, tau_r + 1/F]
//
// Every LTI element is applied exactly to the tones of the signal (a tone stays a tone), the
// mixers shift tones by +-f_c, and only the demodulation integral is evaluated on samples.
struct PassbandConfig
{
    FrequencyGrid grid{15e3, 16, 64 * 15e3};
    int oversampling = 512; // N_s, samples per OFDM symbol duration 1/F
    double tau_t = 0.0;     // TX start delay [s]
    double tau_r = 0.0;     // demodulation delay [s]
    double phi_t = 0.0;     // up-conversion LO phase [rad]
    double phi_r = 0.0;     // down-conversion LO phase [rad]

    // Gain of every filter at frequencies that are not on the grid (image bands).
    // 1 means the filters do not help; the demodulator alone removes the 2 f_c image.
    double out_of_band_gain = 1.0;

    // Throws ConfigError on Nyquist violation, non-integer f_c/F or non power-of-two N_s.
    void validate() const;

    long carrier_bins() const; // f_c / F
};

// Filters of a TX chain, the propagation channel and an RX chain, sampled on the grid.
// LF filters are real impulse responses: their values must satisfy H(-lF) = conj(H(lF))
// wherever both frequencies are on the grid and H(0) must be real.
struct LinkFilters
{
    std::vector<cplx> tx_lf;
    std::vector<cplx> tx_rf;
    std::vector<cplx> channel; // H(lF + f_c)
    std::vector<cplx> rx_rf;
    std::vector<cplx> rx_lf;

    static LinkFilters unit(const FrequencyGrid &grid);
    void validate(const FrequencyGrid &grid) const;
};

// s_OFDM(t) = sum_l e^{j 2 pi lF (t - tau_t)} x_l evaluated at the given times.
std::vector<cplx> ofdm_modulate(std::span<const cplx> x, const PassbandConfig &cfg, std::span<const double> sample_times);

// Runs x through the passband chain and returns the demodulated symbols y_l.
std::vector<cplx> passband_chain(std::span<const cplx> x, const PassbandConfig &cfg, const LinkFilters &filters);

struct ModelCheckReport
{
    int trials = 0;
    double max_relative_error = 0.0; // passband vs. factorized t/H/r prediction (correct signs)

    // Trials whose RX phase satisfies |sin(2 phi_r)| > 0.2, and the smallest relative error
    // seen on them when the inaccurate RX sign is used for the prediction.
    int inaccurate_trials = 0;
    double inaccurate_min_error = 0.0;
    double inaccurate_max_error = 0.0;

    std::string summary(double threshold) const;
};

// Randomized comparison of passband_chain against tx_transfer * H * rx_transfer.
// Draws phi_t, phi_r ~ U[0, 2pi), tau_t, tau_r ~ U[0, 0.1/F], filters with magnitude in
// [0.5, 2] and uniform phase (LF filters Hermitian-consistent) and complex Gaussian x.
// The grid and oversampling of cfg are used; its delays and phases are overwritten.
ModelCheckReport verify_model(const PassbandConfig &cfg, int trials, std::uint64_t seed);

} // namespace tddmimo

#endif
