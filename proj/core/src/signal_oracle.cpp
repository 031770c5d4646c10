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

#include "tddmimo/signal_oracle.hpp"
#include "tddmimo/errors.hpp"
#include "tddmimo/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace tddmimo
{

namespace
{
constexpr double two_pi = 2.0 * std::numbers::pi;
const cplx j{0.0, 1.0};

// Sum of complex exponentials, keyed by frequency in units of the subcarrier spacing.
using Spectrum = std::map<long, cplx>;

cplx from_grid(const std::vector<cplx> &values, const FrequencyGrid &grid, long l)
{
    return values[grid.offset(static_cast<int>(l))];
}

// Real baseband filter: values on the grid, Hermitian mirror below, out-of-band elsewhere.
cplx lf_response(const std::vector<cplx> &values, const PassbandConfig &cfg, long m)
{
    const auto &grid = cfg.grid;
    if (grid.contains(static_cast<int>(m)))
        return from_grid(values, grid, m);
    if (grid.contains(static_cast<int>(-m)))
        return std::conj(from_grid(values, grid, -m));
    return cfg.out_of_band_gain;
}

// Real passband element sampled at lF + f_c.
cplx rf_response(const std::vector<cplx> &values, const PassbandConfig &cfg, long m)
{
    const long k = cfg.carrier_bins();
    if (m > 0 && cfg.grid.contains(static_cast<int>(m - k)))
        return from_grid(values, cfg.grid, m - k);
    if (m < 0 && cfg.grid.contains(static_cast<int>(-m - k)))
        return std::conj(from_grid(values, cfg.grid, -m - k));
    return cfg.out_of_band_gain;
}

Spectrum real_part(const Spectrum &s)
{
    Spectrum out;
    for (const auto &[m, c] : s)
    {
        out[m] += 0.5 * c;
        out[-m] += 0.5 * std::conj(c);
    }
    return out;
}

Spectrum imag_part(const Spectrum &s)
{
    Spectrum out;
    for (const auto &[m, c] : s)
    {
        out[m] += c / (2.0 * j);
        out[-m] -= std::conj(c) / (2.0 * j);
    }
    return out;
}

template <typename Response>
void apply(Spectrum &s, Response &&response)
{
    for (auto &[m, c] : s)
        c *= response(m);
}

// Adds gain * s(t) * cos(2 pi f_c t + phi) (or sin) to out.
void mix_real(Spectrum &out, const Spectrum &s, long k, double phi, bool use_sin, double gain)
{
    const cplx up = std::polar(1.0, phi);
    const cplx down = std::conj(up);
    for (const auto &[m, c] : s)
    {
        if (use_sin)
        {
            out[m + k] += gain * c * up / (2.0 * j);
            out[m - k] -= gain * c * down / (2.0 * j);
        }
        else
        {
            out[m + k] += gain * c * up / 2.0;
            out[m - k] += gain * c * down / 2.0;
        }
    }
}

bool is_power_of_two(int v)
{
    return v > 0 && (v & (v - 1)) == 0;
}

cplx random_gain(Engine &rng)
{
    return std::polar(uniform(rng, 0.5, 2.0), uniform(rng, 0.0, two_pi));
}

// Values of a real LF filter: H(0) real, H(-lF) = conj(H(lF)), H(-L/2 F) unconstrained.
std::vector<cplx> random_real_filter(const FrequencyGrid &grid, Engine &rng)
{
    std::vector<cplx> v(static_cast<std::size_t>(grid.subcarriers));
    for (int l = grid.first_index(); l <= 0; ++l)
    {
        if (l == 0)
        {
            const double sign = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
            v[grid.offset(0)] = sign * uniform(rng, 0.5, 2.0);
        }
        else
        {
            const cplx h = random_gain(rng);
            v[grid.offset(l)] = h;
            if (grid.contains(-l))
                v[grid.offset(-l)] = std::conj(h);
        }
    }
    return v;
}

std::vector<cplx> random_filter(const FrequencyGrid &grid, Engine &rng)
{
    std::vector<cplx> v(static_cast<std::size_t>(grid.subcarriers));
    for (auto &h : v)
        h = random_gain(rng);
    return v;
}

} // namespace

long PassbandConfig::carrier_bins() const
{
    return std::lround(grid.carrier_hz / grid.spacing_hz);
}

void PassbandConfig::validate() const
{
    grid.validate();
    if (!is_power_of_two(oversampling))
        throw ConfigError("PassbandConfig: oversampling must be a power of two");
    const double ratio = grid.carrier_hz / grid.spacing_hz;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
        throw ConfigError("PassbandConfig: carrier frequency must be an integer multiple of the subcarrier spacing");
    const double sample_rate = oversampling * grid.spacing_hz;
    const double highest = 2.0 * grid.carrier_hz + grid.subcarriers * grid.spacing_hz / 2.0;
    if (!(sample_rate > 2.0 * highest))
        throw ConfigError(fmt::format("PassbandConfig: Nyquist violated, N_s*F = {:g} Hz must exceed {:g} Hz",
                                      sample_rate, 2.0 * highest));
}

LinkFilters LinkFilters::unit(const FrequencyGrid &grid)
{
    const std::vector<cplx> ones(static_cast<std::size_t>(grid.subcarriers), 1.0);
    return {ones, ones, ones, ones, ones};
}

void LinkFilters::validate(const FrequencyGrid &grid) const
{
    const auto n = static_cast<std::size_t>(grid.subcarriers);
    for (const auto *v : {&tx_lf, &tx_rf, &channel, &rx_rf, &rx_lf})
        if (v->size() != n)
            throw DimensionError(fmt::format("LinkFilters: expected {} values per filter, got {}", n, v->size()));

    for (const auto *v : {&tx_lf, &rx_lf})
    {
        for (int l = grid.first_index(); l <= grid.last_index(); ++l)
        {
            if (!grid.contains(-l))
                continue;
            const cplx a = (*v)[grid.offset(l)];
            const cplx b = std::conj((*v)[grid.offset(-l)]);
            if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
                throw ConfigError(fmt::format("LinkFilters: LF filter is not a real impulse response "
                                              "(H({}F) != conj(H({}F)))",
                                              l, -l));
        }
    }
}

std::vector<cplx> ofdm_modulate(std::span<const cplx> x, const PassbandConfig &cfg, std::span<const double> sample_times)
{
    const auto &grid = cfg.grid;
    if (x.size() != static_cast<std::size_t>(grid.subcarriers))
        throw DimensionError(fmt::format("ofdm_modulate: {} symbols for {} subcarriers", x.size(), grid.subcarriers));

    std::vector<cplx> s(sample_times.size());
    for (std::size_t k = 0; k < sample_times.size(); ++k)
    {
        cplx acc = 0.0;
        for (int l = grid.first_index(); l <= grid.last_index(); ++l)
            acc += std::polar(1.0, two_pi * grid.baseband_frequency(l) * (sample_times[k] - cfg.tau_t)) * x[grid.offset(l)];
        s[k] = acc;
    }
    return s;
}

std::vector<cplx> passband_chain(std::span<const cplx> x, const PassbandConfig &cfg, const LinkFilters &filters)
{
    cfg.validate();
    const auto &grid = cfg.grid;
    if (x.size() != static_cast<std::size_t>(grid.subcarriers))
        throw DimensionError(fmt::format("passband_chain: {} symbols for {} subcarriers", x.size(), grid.subcarriers));
    filters.validate(grid);

    const long k = cfg.carrier_bins();
    const double spacing = grid.spacing_hz;

    Spectrum ofdm;
    for (int l = grid.first_index(); l <= grid.last_index(); ++l)
        ofdm[l] += std::polar(1.0, -two_pi * l * spacing * cfg.tau_t) * x[grid.offset(l)];

    // I and Q branches through the TX LF filter
    Spectrum s1_i = real_part(ofdm);
    Spectrum s1_q = imag_part(ofdm);
    apply(s1_i, [&](long m) { return lf_response(filters.tx_lf, cfg, m); });
    apply(s1_q, [&](long m) { return lf_response(filters.tx_lf, cfg, m); });

    // s2 = s1_I cos(2 pi f_c t + phi_t) - s1_Q sin(2 pi f_c t + phi_t)
    Spectrum s2;
    mix_real(s2, s1_i, k, cfg.phi_t, false, 1.0);
    mix_real(s2, s1_q, k, cfg.phi_t, true, -1.0);

    // TX RF, propagation, RX RF
    apply(s2, [&](long m) {
        return rf_response(filters.tx_rf, cfg, m) * rf_response(filters.channel, cfg, m) *
               rf_response(filters.rx_rf, cfg, m);
    });

    // s4 = h_r,LF * (s3 [cos(2 pi f_c t + phi_r) - j sin(2 pi f_c t + phi_r)])
    Spectrum s4;
    const cplx lo_r = std::polar(1.0, -cfg.phi_r);
    for (const auto &[m, c] : s2)
        s4[m - k] += c * lo_r;
    apply(s4, [&](long m) { return lf_response(filters.rx_lf, cfg, m); });

    // y_l = 2F * integral over [tau_r, tau_r + 1/F] of s4(t) e^{-j 2 pi lF (t - tau_r)} dt
    const int ns = cfg.oversampling;
    std::vector<cplx> samples(static_cast<std::size_t>(ns), 0.0);
    for (const auto &[m, c] : s4)
    {
        if (c == cplx{0.0, 0.0})
            continue;
        // keep the phase argument small: e^{j 2 pi m F tau_r} e^{j 2 pi (m k mod N_s) / N_s}
        double cycles = m * spacing * cfg.tau_r;
        cycles -= std::floor(cycles);
        const cplx start = c * std::polar(1.0, two_pi * cycles);
        for (int n = 0; n < ns; ++n)
        {
            const long idx = ((m * n) % ns + ns) % ns;
            samples[static_cast<std::size_t>(n)] += start * std::polar(1.0, two_pi * static_cast<double>(idx) / ns);
        }
    }

    std::vector<cplx> y(x.size());
    for (int l = grid.first_index(); l <= grid.last_index(); ++l)
    {
        cplx acc = 0.0;
        for (int n = 0; n < ns; ++n)
        {
            const long idx = ((static_cast<long>(l) * n) % ns + ns) % ns;
            acc += samples[static_cast<std::size_t>(n)] * std::polar(1.0, -two_pi * static_cast<double>(idx) / ns);
        }
        y[grid.offset(l)] = 2.0 / ns * acc;
    }
    return y;
}

std::string ModelCheckReport::summary(double threshold) const
{
    const bool pass = max_relative_error < threshold;
    return fmt::format("verify-model: trials={} max_rel_error={:.3e} threshold={:.0e} "
                       "inaccurate_trials={} inaccurate_min_error={:.3f} {}",
                       trials, max_relative_error, threshold, inaccurate_trials, inaccurate_min_error,
                       pass ? "PASS" : "FAIL");
}

ModelCheckReport verify_model(const PassbandConfig &cfg, int trials, std::uint64_t seed)
{
    if (trials < 1)
        throw ConfigError("verify_model: trial count must be at least 1");
    cfg.validate();

    const auto &grid = cfg.grid;
    const double max_delay = 0.1 / grid.spacing_hz;
    ModelCheckReport report;
    report.trials = trials;
    report.inaccurate_min_error = std::numeric_limits<double>::infinity();

    for (int trial = 0; trial < trials; ++trial)
    {
        Engine rng = make_stream(seed, static_cast<std::uint64_t>(trial), StreamTag::Oracle);

        PassbandConfig run = cfg;
        run.phi_t = uniform(rng, 0.0, two_pi);
        run.phi_r = uniform(rng, 0.0, two_pi);
        run.tau_t = uniform(rng, 0.0, max_delay);
        run.tau_r = uniform(rng, 0.0, max_delay);

        LinkFilters f;
        f.tx_lf = random_real_filter(grid, rng);
        f.rx_lf = random_real_filter(grid, rng);
        f.tx_rf = random_filter(grid, rng);
        f.channel = random_filter(grid, rng);
        f.rx_rf = random_filter(grid, rng);

        std::vector<cplx> x(static_cast<std::size_t>(grid.subcarriers));
        for (auto &v : x)
            v = complex_gaussian(rng);

        const auto y = passband_chain(x, run, f);

        // Factorized prediction through the transceiver model
        TrxChain tx = TrxChain::ideal(grid, run.phi_t, run.tau_t);
        tx.tx_lf = f.tx_lf;
        tx.tx_rf = f.tx_rf;
        TrxChain rx = TrxChain::ideal(grid, run.phi_r, run.tau_r);
        rx.rx_lf = f.rx_lf;
        rx.rx_rf = f.rx_rf;

        const bool qualifies = std::abs(std::sin(2.0 * run.phi_r)) > 0.2;
        double trial_inaccurate = std::numeric_limits<double>::infinity();
        for (int l = grid.first_index(); l <= grid.last_index(); ++l)
        {
            const auto i = grid.offset(l);
            const cplx h = f.channel[i];
            const cplx t = tx_transfer(tx, grid, l);
            const cplx good = rx_transfer(rx, grid, l, SignModel::Correct) * h * t * x[i];
            const cplx bad = rx_transfer(rx, grid, l, SignModel::Inaccurate) * h * t * x[i];
            report.max_relative_error = std::max(report.max_relative_error, std::abs(y[i] - good) / std::abs(good));
            trial_inaccurate = std::min(trial_inaccurate, std::abs(y[i] - bad) / std::abs(bad));
        }
        report.inaccurate_max_error = std::max(report.inaccurate_max_error, trial_inaccurate);
        if (qualifies)
        {
            ++report.inaccurate_trials;
            report.inaccurate_min_error = std::min(report.inaccurate_min_error, trial_inaccurate);
        }
    }
    if (report.inaccurate_trials == 0)
        report.inaccurate_min_error = 0.0;
    return report;
}

} // namespace tddmimo
