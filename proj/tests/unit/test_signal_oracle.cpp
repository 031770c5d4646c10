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

#include "support.hpp"

#include "tddmimo/errors.hpp"
#include "tddmimo/rng.hpp"
#include "tddmimo/signal_oracle.hpp"

#include <chrono>
#include <vector>

using namespace tddmimo;
using test::expj;
using test::near;
using test::pi;

namespace
{

std::vector<cplx> random_symbols(std::size_t n, std::uint64_t seed)
{
    Engine rng = make_stream(seed, 0, StreamTag::Generic);
    std::vector<cplx> x(n);
    for (auto &v : x)
        v = complex_gaussian(rng);
    return x;
}

double max_relative_error(const std::vector<cplx> &y, const std::vector<cplx> &expected)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        worst = std::max(worst, std::abs(y[i] - expected[i]) / std::abs(expected[i]));
    return worst;
}

} // namespace

TEST_CASE("passband config validation", "[signal_oracle]")
{
    PassbandConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.carrier_bins() == 64);

    PassbandConfig odd = cfg;
    odd.oversampling = 500;
    CHECK_THROWS_AS(odd.validate(), ConfigError);

    PassbandConfig alias = cfg;
    alias.oversampling = 256; // 256 F < 2 (128 F + 8 F)
    CHECK_THROWS_AS(alias.validate(), ConfigError);

    PassbandConfig off_grid = cfg;
    off_grid.grid.carrier_hz = 64.5 * 15e3;
    CHECK_THROWS_AS(off_grid.validate(), ConfigError);
}

TEST_CASE("ofdm_modulate examples", "[signal_oracle]")
{
    PassbandConfig cfg;
    const std::vector<double> times{0.0, 1e-5, 3.3e-5, 6.6e-5};

    const std::vector<cplx> zeros(16, 0.0);
    for (const auto &s : ofdm_modulate(zeros, cfg, times))
        CHECK(s == cplx{0.0, 0.0});

    PassbandConfig one = cfg;
    one.grid.subcarriers = 1;
    one.tau_t = 4.2e-6;
    const std::vector<cplx> x0{cplx{0.3, -0.4}};
    for (const auto &s : ofdm_modulate(x0, one, times))
        CHECK_THAT(s, near(x0[0], 1e-15));

    PassbandConfig two = cfg;
    two.grid.subcarriers = 2;
    const std::vector<cplx> x2{1.0, 1.0};
    const std::vector<double> t0{0.0};
    CHECK_THAT(ofdm_modulate(x2, two, t0)[0], near(2.0, 1e-15));

    CHECK_THROWS_AS(ofdm_modulate(x2, cfg, t0), DimensionError);
}

TEST_CASE("passband identity chain returns the input", "[signal_oracle]")
{
    PassbandConfig cfg;
    cfg.phi_t = cfg.phi_r = 1.234;
    const auto x = random_symbols(16, 1);
    const auto y = passband_chain(x, cfg, LinkFilters::unit(cfg.grid));
    CHECK(max_relative_error(y, x) < 1e-12);
}

TEST_CASE("LO phase enters TX with plus and RX with minus", "[signal_oracle]")
{
    PassbandConfig cfg;
    const auto x = random_symbols(16, 2);
    const auto unit = LinkFilters::unit(cfg.grid);

    PassbandConfig tx = cfg;
    tx.phi_t = pi / 4;
    std::vector<cplx> expected(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        expected[i] = expj(pi / 4) * x[i];
    CHECK(max_relative_error(passband_chain(x, tx, unit), expected) < 1e-12);

    PassbandConfig rx = cfg;
    rx.phi_r = pi / 4;
    for (std::size_t i = 0; i < x.size(); ++i)
        expected[i] = expj(-pi / 4) * x[i];
    CHECK(max_relative_error(passband_chain(x, rx, unit), expected) < 1e-12);
}

TEST_CASE("delays rotate subcarriers linearly", "[signal_oracle][property]")
{
    PassbandConfig cfg;
    const auto x = random_symbols(16, 3);
    const auto unit = LinkFilters::unit(cfg.grid);
    const double tau = 2.1e-6;

    PassbandConfig one = cfg, two = cfg;
    one.tau_r = tau;
    two.tau_r = 2.0 * tau;
    const auto y1 = passband_chain(x, one, unit);
    const auto y2 = passband_chain(x, two, unit);
    for (int l = cfg.grid.first_index(); l <= cfg.grid.last_index(); ++l)
    {
        const auto i = cfg.grid.offset(l);
        const cplx rot = expj(2.0 * pi * l * cfg.grid.spacing_hz * tau);
        REQUIRE_THAT(y1[i], near(rot * x[i], 1e-12 * std::abs(x[i])));
        REQUIRE_THAT(y2[i], near(rot * rot * x[i], 1e-12 * std::abs(x[i])));
    }

    PassbandConfig t = cfg;
    t.tau_t = tau;
    const auto yt = passband_chain(x, t, unit);
    for (int l = cfg.grid.first_index(); l <= cfg.grid.last_index(); ++l)
    {
        const auto i = cfg.grid.offset(l);
        REQUIRE_THAT(yt[i], near(expj(-2.0 * pi * l * cfg.grid.spacing_hz * tau) * x[i], 1e-12 * std::abs(x[i])));
    }
}

TEST_CASE("double-carrier image does not leak into other subcarriers", "[signal_oracle][property]")
{
    PassbandConfig cfg;
    cfg.phi_t = 0.4;
    cfg.phi_r = 2.9;
    cfg.tau_t = 1.1e-6;
    cfg.tau_r = 3.7e-6;
    for (int l = cfg.grid.first_index(); l <= cfg.grid.last_index(); ++l)
    {
        std::vector<cplx> x(16, 0.0);
        x[cfg.grid.offset(l)] = cplx{0.6, 0.8};
        const auto y = passband_chain(x, cfg, LinkFilters::unit(cfg.grid));
        for (int m = cfg.grid.first_index(); m <= cfg.grid.last_index(); ++m)
            if (m != l)
                REQUIRE(std::abs(y[cfg.grid.offset(m)]) < 1e-9);
    }
}

TEST_CASE("LF filters must be real impulse responses", "[signal_oracle]")
{
    PassbandConfig cfg;
    LinkFilters f = LinkFilters::unit(cfg.grid);
    f.tx_lf[cfg.grid.offset(3)] = cplx{0.0, 1.0};
    const auto x = random_symbols(16, 4);
    CHECK_THROWS_AS(passband_chain(x, cfg, f), ConfigError);

    f.tx_lf[cfg.grid.offset(-3)] = cplx{0.0, -1.0};
    CHECK_NOTHROW(passband_chain(x, cfg, f));

    LinkFilters short_rf = LinkFilters::unit(cfg.grid);
    short_rf.channel.pop_back();
    CHECK_THROWS_AS(passband_chain(x, cfg, short_rf), DimensionError);
}

TEST_CASE("verify_model matches the factorized model", "[signal_oracle]")
{
    const auto start = std::chrono::steady_clock::now();
    const auto report = verify_model(PassbandConfig{}, 100, 1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(report.trials == 100);
    CHECK(report.max_relative_error < 1e-9);
    CHECK(report.inaccurate_trials > 50);
    CHECK(report.inaccurate_min_error > 0.1);
    CHECK(secs < 30.0);
    CHECK_THAT(report.summary(1e-9), Catch::Matchers::EndsWith("PASS"));
}

TEST_CASE("verify_model on other grids", "[signal_oracle]")
{
    PassbandConfig cfg;
    cfg.grid.subcarriers = 8;
    cfg.grid.carrier_hz = 40 * cfg.grid.spacing_hz;
    cfg.oversampling = 256;
    CHECK(verify_model(cfg, 20, 9).max_relative_error < 1e-9);

    PassbandConfig one;
    one.grid.subcarriers = 1;
    one.grid.carrier_hz = 16 * one.grid.spacing_hz;
    one.oversampling = 128;
    CHECK(verify_model(one, 20, 9).max_relative_error < 1e-9);

    CHECK_THROWS_AS(verify_model(cfg, 0, 1), ConfigError);
}

TEST_CASE("verify_model is reproducible", "[signal_oracle]")
{
    const auto a = verify_model(PassbandConfig{}, 5, 42);
    const auto b = verify_model(PassbandConfig{}, 5, 42);
    CHECK(a.max_relative_error == b.max_relative_error);
    CHECK(a.inaccurate_min_error == b.inaccurate_min_error);
}
