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

#ifndef TDDMIMO_HW_MODEL_HPP
#define TDDMIMO_HW_MODEL_HPP

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace tddmimo
{

using cplx = std::complex<double>;

// OFDM subcarrier grid. Subcarrier l sits at baseband frequency l*F, l in [-L/2, L/2-1].
// L = 1 is the single-tone grid {l = 0} used by the flat-channel experiment.
struct FrequencyGrid
{
    double spacing_hz = 15e3; // F
    int subcarriers = 1;      // L
    double carrier_hz = 3.5e9;

    void validate() const;

    int first_index() const { return subcarriers == 1 ? 0 : -subcarriers / 2; }
    int last_index() const { return subcarriers == 1 ? 0 : subcarriers / 2 - 1; }
    bool contains(int l) const { return l >= first_index() && l <= last_index(); }

    // Position of subcarrier l in per-subcarrier arrays; throws std::out_of_range.
    std::size_t offset(int l) const;

    double baseband_frequency(int l) const { return l * spacing_hz; }
};

// Single subcarrier at f = 0; frequency dependency ignored.
FrequencyGrid flat_grid();

// Which sign the LO phase takes in the receive chain. The transmit chain is e^{+j phi}
// under both models.
enum class SignModel
{
    Correct,   // RX chain e^{-j phi}
    Inaccurate // RX chain e^{+j phi}
};

std::string_view to_string(SignModel model);
SignModel parse_sign_model(std::string_view text);

// One transceiver: a TX chain and an RX chain driven by the same LO and time reference.
//
// phi/tau are the common LO phase and timing reference of the TRX. The up- and
// down-conversion phases are phi + dphi_t and phi + dphi_r, the TX start and RX
// demodulation delays tau + dtau_t and tau + dtau_r. Filters are sampled on the grid:
// LF filters at l*F, RF filters at l*F + f_c. phi is never reduced modulo 2*pi.
struct TrxChain
{
    double phi = 0.0;
    double tau = 0.0;
    double dphi_t = 0.0;
    double dphi_r = 0.0;
    double dtau_t = 0.0;
    double dtau_r = 0.0;
    std::vector<cplx> tx_lf;
    std::vector<cplx> rx_lf;
    std::vector<cplx> tx_rf;
    std::vector<cplx> rx_rf;

    // Unit filters, zero offsets.
    static TrxChain ideal(const FrequencyGrid &grid, double phi = 0.0, double tau = 0.0);

    void validate(const FrequencyGrid &grid) const;
};

// t(lF) = e^{+j(phi+dphi_t)} e^{-j 2 pi lF (tau+dtau_t)} H_t,LF(lF) H_t,RF(lF+f_c)
cplx tx_transfer(const TrxChain &chain, const FrequencyGrid &grid, int l, SignModel model = SignModel::Correct);

// r(lF) = e^{-j(phi+dphi_r)} e^{+j 2 pi lF (tau+dtau_r)} H_r,LF(lF) H_r,RF(lF+f_c)   (Correct)
// r(lF) = e^{+j(phi+dphi_r)} e^{+j 2 pi lF (tau+dtau_r)} H_r,LF(lF) H_r,RF(lF+f_c)   (Inaccurate)
cplx rx_transfer(const TrxChain &chain, const FrequencyGrid &grid, int l, SignModel model = SignModel::Correct);

// Uplink: UE TX chain -> propagation -> base-station RX chain.
inline cplx ul_channel(cplx r_bs, cplx h, cplx t_ue) { return r_bs * h * t_ue; }

// Downlink: base-station TX chain -> propagation -> UE RX chain.
inline cplx dl_channel(cplx r_ue, cplx h, cplx t_bs) { return r_ue * h * t_bs; }

} // namespace tddmimo

#endif
