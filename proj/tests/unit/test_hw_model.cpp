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
#include "tddmimo/hw_model.hpp"
#include "tddmimo/rng.hpp"

using namespace tddmimo;
using test::expj;
using test::near;
using test::pi;

namespace
{

FrequencyGrid grid16()
{
    return {15e3, 16, 64 * 15e3};
}

TrxChain random_chain(const FrequencyGrid &grid, Engine &rng)
{
    TrxChain c = TrxChain::ideal(grid, uniform(rng, -50.0, 50.0), uniform(rng, 0.0, 1e-5));
    return c;
}

} // namespace

TEST_CASE("grid indexing", "[hw_model]")
{
    const FrequencyGrid g = grid16();
    CHECK(g.first_index() == -8);
    CHECK(g.last_index() == 7);
    CHECK(g.offset(-8) == 0);
    CHECK(g.offset(7) == 15);
    CHECK_THROWS_AS(g.offset(8), std::out_of_range);
    CHECK_THROWS_AS(g.offset(-9), std::out_of_range);

    const FrequencyGrid flat = flat_grid();
    CHECK(flat.first_index() == 0);
    CHECK(flat.last_index() == 0);
    CHECK(flat.offset(0) == 0);
}

TEST_CASE("grid validation", "[hw_model]")
{
    CHECK_NOTHROW(grid16().validate());
    CHECK_THROWS_AS((FrequencyGrid{15e3, 3, 1e9}.validate()), ConfigError);
    CHECK_THROWS_AS((FrequencyGrid{15e3, 0, 1e9}.validate()), ConfigError);
    CHECK_THROWS_AS((FrequencyGrid{0.0, 16, 1e9}.validate()), ConfigError);
    CHECK_THROWS_AS((FrequencyGrid{15e3, 16, 4 * 15e3}.validate()), ConfigError);
}

TEST_CASE("sign model names round-trip", "[hw_model]")
{
    for (auto m : {SignModel::Correct, SignModel::Inaccurate})
        CHECK(parse_sign_model(to_string(m)) == m);
    CHECK_THROWS_AS(parse_sign_model("wrong"), ConfigError);
}

TEST_CASE("tx_transfer examples", "[hw_model]")
{
    const FrequencyGrid g = grid16();

    CHECK_THAT(tx_transfer(TrxChain::ideal(g), g, 0), near(1.0, 1e-15));
    CHECK_THAT(tx_transfer(TrxChain::ideal(g, pi / 4), g, 0), near(expj(pi / 4), 1e-15));

    // tau = 1 us at lF = 15 kHz
    const cplx t = tx_transfer(TrxChain::ideal(g, 0.0, 1e-6), g, 1);
    CHECK_THAT(t, near(expj(-2.0 * pi * 0.015), 1e-15));
    CHECK_THAT(t, near({0.99556196460308, -0.09410831331851}, 1e-12));
}

TEST_CASE("tx_transfer includes offsets and filters", "[hw_model]")
{
    const FrequencyGrid g = grid16();
    TrxChain c = TrxChain::ideal(g, 0.3, 2e-6);
    c.dphi_t = 0.1;
    c.dtau_t = 1e-6;
    c.tx_lf[g.offset(-3)] = {0.5, 0.5};
    c.tx_rf[g.offset(-3)] = {2.0, -1.0};
    const double f = -3 * 15e3;
    const cplx expected = expj(0.4) * expj(-2.0 * pi * f * 3e-6) * cplx{0.5, 0.5} * cplx{2.0, -1.0};
    CHECK_THAT(tx_transfer(c, g, -3), near(expected, 1e-14));
    CHECK_THAT(tx_transfer(c, g, -3, SignModel::Inaccurate), near(expected, 1e-14));
}

TEST_CASE("rx_transfer examples", "[hw_model]")
{
    const FrequencyGrid g = grid16();
    const TrxChain c = TrxChain::ideal(g, pi / 3);
    CHECK_THAT(rx_transfer(c, g, 0, SignModel::Correct), near(expj(-pi / 3), 1e-15));
    CHECK_THAT(rx_transfer(c, g, 0, SignModel::Inaccurate), near(expj(pi / 3), 1e-15));

    TrxChain d = TrxChain::ideal(g, 0.2, 1e-6);
    d.dphi_r = -0.05;
    d.dtau_r = 3e-7;
    d.rx_lf[g.offset(5)] = 1.5;
    d.rx_rf[g.offset(5)] = {0.0, 2.0};
    const double f = 5 * 15e3;
    const cplx tail = expj(2.0 * pi * f * 1.3e-6) * 1.5 * cplx{0.0, 2.0};
    CHECK_THAT(rx_transfer(d, g, 5), near(expj(-0.15) * tail, 1e-14));
    CHECK_THAT(rx_transfer(d, g, 5, SignModel::Inaccurate), near(expj(0.15) * tail, 1e-14));
}

TEST_CASE("transfer rejects bad subcarrier and filter sizes", "[hw_model]")
{
    const FrequencyGrid g = grid16();
    TrxChain c = TrxChain::ideal(g);
    CHECK_THROWS_AS(tx_transfer(c, g, 8), std::out_of_range);
    CHECK_THROWS_AS(rx_transfer(c, g, -9), std::out_of_range);
    c.rx_rf.pop_back();
    CHECK_THROWS_AS(rx_transfer(c, g, 0), DimensionError);
    CHECK_THROWS_AS(tx_transfer(c, g, 0), DimensionError);
}

TEST_CASE("loopback product is one", "[hw_model][property]")
{
    const FrequencyGrid g = grid16();
    Engine rng = make_stream(7, 0, StreamTag::Generic);
    for (int i = 0; i < 1000; ++i)
    {
        const TrxChain c = random_chain(g, rng);
        for (int l = g.first_index(); l <= g.last_index(); ++l)
            REQUIRE_THAT(rx_transfer(c, g, l) * tx_transfer(c, g, l), near(1.0, 1e-12));
    }
}

TEST_CASE("common phase shift invariance and sensitivity", "[hw_model][property]")
{
    const FrequencyGrid g = grid16();
    Engine rng = make_stream(7, 1, StreamTag::Generic);
    for (int i = 0; i < 200; ++i)
    {
        const TrxChain a = random_chain(g, rng);
        const TrxChain b = random_chain(g, rng);
        const double shift = uniform(rng, -10.0, 10.0);
        TrxChain a2 = a, b2 = b;
        a2.phi += shift;
        b2.phi += shift;
        const int l = static_cast<int>(uniform(rng, -8.0, 7.99));

        const cplx correct = rx_transfer(b, g, l) * tx_transfer(a, g, l);
        const cplx correct2 = rx_transfer(b2, g, l) * tx_transfer(a2, g, l);
        REQUIRE_THAT(correct2, near(correct, 1e-12));

        const cplx bad = rx_transfer(b, g, l, SignModel::Inaccurate) * tx_transfer(a, g, l, SignModel::Inaccurate);
        const cplx bad2 = rx_transfer(b2, g, l, SignModel::Inaccurate) * tx_transfer(a2, g, l, SignModel::Inaccurate);
        REQUIRE_THAT(bad2, near(bad * expj(2.0 * shift), 1e-12));
    }
}

TEST_CASE("rx models are conjugates for real filters at zero delay", "[hw_model][property]")
{
    const FrequencyGrid g = grid16();
    Engine rng = make_stream(7, 2, StreamTag::Generic);
    for (int i = 0; i < 100; ++i)
    {
        TrxChain c = TrxChain::ideal(g, uniform(rng, -10.0, 10.0));
        for (auto &v : c.rx_lf)
            v = uniform(rng, -2.0, 2.0);
        for (auto &v : c.rx_rf)
            v = uniform(rng, -2.0, 2.0);
        const int l = static_cast<int>(uniform(rng, -8.0, 7.99));
        REQUIRE_THAT(rx_transfer(c, g, l, SignModel::Inaccurate),
                     near(std::conj(rx_transfer(c, g, l, SignModel::Correct)), 1e-12));
    }
}

TEST_CASE("phases are kept unwrapped", "[hw_model]")
{
    const FrequencyGrid g = flat_grid();
    const TrxChain c = TrxChain::ideal(g, 1000.25);
    CHECK(c.phi == 1000.25);
    CHECK_THAT(tx_transfer(c, g, 0), near(expj(1000.25), 1e-12));
}

TEST_CASE("ul and dl composition", "[hw_model]")
{
    CHECK_THAT(ul_channel(1.0, 1.0, 1.0), near(1.0, 0.0));
    CHECK_THAT(dl_channel(1.0, 1.0, 1.0), near(1.0, 0.0));
    CHECK_THAT(dl_channel(expj(-pi / 2), 2.0, expj(pi / 2)), near(2.0, 1e-15));

    const double p1 = 0.7, pue = -1.9;
    const cplx h{0.3, -1.1};
    CHECK_THAT(ul_channel(expj(-p1), h, expj(pue)), near(h * expj(pue - p1), 1e-15));

    // Correct model: UL and DL carry opposite LO phase differences
    const FrequencyGrid g = flat_grid();
    const TrxChain bs = TrxChain::ideal(g, p1);
    const TrxChain ue = TrxChain::ideal(g, pue);
    const cplx ul = ul_channel(rx_transfer(bs, g, 0), h, tx_transfer(ue, g, 0));
    const cplx dl = dl_channel(rx_transfer(ue, g, 0), h, tx_transfer(bs, g, 0));
    CHECK_THAT(ul, near(expj(pue - p1) * h, 1e-15));
    CHECK_THAT(dl, near(expj(p1 - pue) * h, 1e-15));
    CHECK_THAT(ul * dl, near(h * h, 1e-15));

    // Inaccurate model: both directions identical for any drift
    Engine rng = make_stream(3, 0, StreamTag::Generic);
    for (int i = 0; i < 100; ++i)
    {
        const TrxChain b = TrxChain::ideal(g, uniform(rng, -20.0, 20.0));
        const TrxChain u = TrxChain::ideal(g, uniform(rng, -20.0, 20.0));
        const auto m = SignModel::Inaccurate;
        const cplx ul_bad = ul_channel(rx_transfer(b, g, 0, m), h, tx_transfer(u, g, 0, m));
        const cplx dl_bad = dl_channel(rx_transfer(u, g, 0, m), h, tx_transfer(b, g, 0, m));
        REQUIRE_THAT(ul_bad, near(dl_bad, 1e-14));
        REQUIRE_THAT(ul_bad, near(expj(b.phi + u.phi) * h, 1e-12));
    }
}
