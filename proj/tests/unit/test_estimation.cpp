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
#include "tddmimo/estimation.hpp"

#include <cmath>

using namespace tddmimo;
using test::expj;
using test::near;

namespace
{

double db(double x)
{
    return 10.0 * std::log10(x);
}

double srs_mse(double noise_std, int n_srs, std::uint64_t seed)
{
    Engine rng = make_stream(seed, 0, StreamTag::Sounding);
    const Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(100, 100);
    return (srs_estimate(h, noise_std, n_srs, rng) - h).squaredNorm() / static_cast<double>(h.size());
}

} // namespace

TEST_CASE("estimation mode names round-trip", "[estimation]")
{
    for (auto m : {EstimationMode::Dmrs, EstimationMode::Blind, EstimationMode::Genie})
        CHECK(parse_estimation_mode(to_string(m)) == m);
    CHECK_THROWS_AS(parse_estimation_mode("ls"), ConfigError);
}

TEST_CASE("SRS estimate", "[estimation]")
{
    Engine rng = make_stream(1, 0, StreamTag::Sounding);
    const Eigen::MatrixXcd h = Eigen::MatrixXcd::Random(4, 8);
    CHECK(srs_estimate(h, 0.0, 1, rng) == h);
    CHECK_THROWS_AS(srs_estimate(h, 0.1, 0, rng), ConfigError);

    CHECK(srs_mse(0.2, 1, 3) == Catch::Approx(0.04).epsilon(0.05));
    CHECK(srs_mse(0.2, 4, 3) == Catch::Approx(0.01).epsilon(0.05));
    CHECK(std::sqrt(srs_mse(0.2, 4, 5) / srs_mse(0.2, 1, 5)) == Catch::Approx(0.5).epsilon(0.05));
}

TEST_CASE("DMRS estimate", "[estimation]")
{
    Engine rng = make_stream(1, 0, StreamTag::Dmrs);
    EffectiveChannel a;
    a.a = {cplx{1.0, 0.5}, cplx{-0.2, 0.1}};
    const auto exact = dmrs_estimate(a, 0.0, 1, rng);
    CHECK(exact.a == a.a);
    CHECK_THROWS_AS(dmrs_estimate(a, 0.1, 0, rng), ConfigError);

    EffectiveChannel zeros;
    zeros.a.assign(20000, 0.0);
    auto mse = [&](int pilots) {
        double s = 0.0;
        for (const auto &v : dmrs_estimate(zeros, 0.3, pilots, rng).a)
            s += std::norm(v);
        return s / 20000.0;
    };
    const double one = mse(1);
    const double six = mse(6);
    CHECK(one == Catch::Approx(0.09).epsilon(0.05));
    CHECK(six / one == Catch::Approx(1.0 / 6.0).epsilon(0.07));
}

TEST_CASE("DMRS penalty formula", "[estimation]")
{
    CHECK(dmrs_effective_sinr(1.0, 1) == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(db(dmrs_effective_sinr(100.0, 6)) == Catch::Approx(19.32).margin(0.01));

    // high-SINR limit: penalty 10 log10((P + 1) / P)
    const double s = 1e9;
    CHECK(db(s) - db(dmrs_effective_sinr(s, 1)) == Catch::Approx(10.0 * std::log10(2.0)).margin(1e-6));
    CHECK(db(s) - db(dmrs_effective_sinr(s, 6)) == Catch::Approx(10.0 * std::log10(7.0 / 6.0)).margin(1e-6));
    CHECK(10.0 * std::log10(2.0) == Catch::Approx(3.01).margin(0.005));
    CHECK(10.0 * std::log10(7.0 / 6.0) == Catch::Approx(0.669).margin(0.0005));

    CHECK_THROWS_AS(dmrs_effective_sinr(0.0, 1), ConfigError);
    CHECK_THROWS_AS(dmrs_effective_sinr(1.0, 0), ConfigError);
}

TEST_CASE("DMRS penalty is monotone and vanishes with many pilots", "[estimation][property]")
{
    for (double sinr : {0.1, 1.0, 10.0, 100.0})
    {
        for (int p = 1; p < 50; ++p)
            REQUIRE(dmrs_effective_sinr(sinr, p + 1) > dmrs_effective_sinr(sinr, p));
        REQUIRE(dmrs_effective_sinr(sinr * 1.5, 3) > dmrs_effective_sinr(sinr, 3));
        REQUIRE(dmrs_effective_sinr(sinr, 1000000) == Catch::Approx(sinr).epsilon(1e-4));
    }
}

TEST_CASE("symbol-level DMRS simulation matches the formula", "[estimation]")
{
    Engine rng = make_stream(2, 0, StreamTag::Dmrs);
    for (double sinr_db : {10.0, 15.0, 20.0})
        for (int pilots : {1, 6})
        {
            const double sinr = std::pow(10.0, sinr_db / 10.0);
            const double mc = dmrs_monte_carlo_sinr(sinr, pilots, 40000, rng);
            INFO("SINR " << sinr_db << " dB, P = " << pilots);
            CHECK(std::abs(db(mc) - db(dmrs_effective_sinr(sinr, pilots))) < 0.2);
        }
    CHECK_THROWS_AS(dmrs_monte_carlo_sinr(10.0, 1, 0, rng), ConfigError);
}

TEST_CASE("blind estimate keeps the magnitude only", "[estimation]")
{
    EffectiveChannel ones;
    ones.a = {1.0, 1.0};
    CHECK(blind_estimate(ones).a == ones.a);

    EffectiveChannel rotated;
    rotated.a = {expj(0.7)};
    CHECK_THAT(blind_estimate(rotated).a[0], near(1.0, 1e-15));

    Engine rng = make_stream(3, 0, StreamTag::Generic);
    for (int i = 0; i < 200; ++i)
    {
        const double mag = uniform(rng, 0.1, 3.0);
        const double theta = uniform(rng, -3.1, 3.1);
        EffectiveChannel a;
        a.a = {std::polar(mag, theta)};
        const cplx b = blind_estimate(a).a[0];
        REQUIRE(std::abs(b - a.a[0]) == Catch::Approx(2.0 * mag * std::abs(std::sin(theta / 2.0))).epsilon(1e-12));
    }
}
