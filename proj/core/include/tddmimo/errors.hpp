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

#ifndef TDDMIMO_ERRORS_HPP
#define TDDMIMO_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tddmimo
{

// Invalid scenario, grid or passband configuration.
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Operand sizes do not conform.
class DimensionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// An over-the-air calibration measurement was unusable (received level below floor).
class CalibrationError : public std::runtime_error
{
public:
    CalibrationError(const std::string &what, std::size_t trx)
        : std::runtime_error(what), trx_(trx) {}

    std::size_t trx() const noexcept { return trx_; }

private:
    std::size_t trx_;
};

// Zero-forcing could not be formed: rank deficiency or condition number above the guard.
class PrecodingError : public std::runtime_error
{
public:
    PrecodingError(const std::string &what, std::vector<std::size_t> ues)
        : std::runtime_error(what), ues_(std::move(ues)) {}

    const std::vector<std::size_t> &ues() const noexcept { return ues_; }

private:
    std::vector<std::size_t> ues_;
};

// Single-tap equalization impossible because the estimated effective channel is zero.
class DetectionError : public std::runtime_error
{
public:
    DetectionError(const std::string &what, std::size_t ue)
        : std::runtime_error(what), ue_(ue) {}

    std::size_t ue() const noexcept { return ue_; }

private:
    std::size_t ue_;
};

// Wraps a module failure with the Monte-Carlo position it happened at.
class SimulationError : public std::runtime_error
{
public:
    SimulationError(const std::string &what, long trial, long step)
        : std::runtime_error(what), trial_(trial), step_(step) {}

    long trial() const noexcept { return trial_; }
    long step() const noexcept { return step_; }

private:
    long trial_;
    long step_;
};

} // namespace tddmimo

#endif
