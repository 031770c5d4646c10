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

#ifndef TDDMIMO_RNG_HPP
#define TDDMIMO_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace tddmimo
{

using Engine = std::mt19937_64;

// Substream families. Every random quantity of a trial is drawn from exactly one
// (master seed, trial, tag, index) stream, so changing e.g. the LO topology never
// perturbs the channel draw of the same trial.
enum class StreamTag : std::uint64_t
{
    Channel = 1,
    BaseStationLo = 2, // index = LO index
    UeLo = 3,          // index = UE index
    Sounding = 4,
    Calibration = 5,
    Dmrs = 6,
    Oracle = 7, // index = trial of verify_model
    Generic = 8
};

// Seeds an mt19937_64 from std::seed_seq{master lo/hi, trial, tag, index}.
Engine make_stream(std::uint64_t master_seed, std::uint64_t trial, StreamTag tag, std::uint64_t index = 0);

// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
inline std::complex<double> complex_gaussian(Engine &rng, double variance = 1.0)
{
    std::normal_distribution<double> n(0.0, 1.0);
    const double s = std::sqrt(variance / 2.0);
    const double re = n(rng);
    const double im = n(rng);
    return {s * re, s * im};
}

inline double uniform(Engine &rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

} // namespace tddmimo

#endif
