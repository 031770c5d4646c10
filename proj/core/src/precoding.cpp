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

#include "tddmimo/precoding.hpp"
#include "tddmimo/errors.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace tddmimo
{

std::string_view to_string(PowerNormalization n)
{
    return n == PowerNormalization::PerColumn ? "per_column" : "sum_power";
}

PowerNormalization parse_power_normalization(std::string_view text)
{
    if (text == "per_column")
        return PowerNormalization::PerColumn;
    if (text == "sum_power")
        return PowerNormalization::SumPower;
    throw ConfigError("unknown normalization '" + std::string(text) + "' (expected per_column|sum_power)");
}

std::string_view to_string(MetricMode m)
{
    return m == MetricMode::Sinr ? "sinr" : "distortion";
}

MetricMode parse_metric_mode(std::string_view text)
{
    if (text == "sinr")
        return MetricMode::Sinr;
    if (text == "distortion")
        return MetricMode::Distortion;
    throw ConfigError("unknown metric '" + std::string(text) + "' (expected sinr|distortion)");
}

namespace
{
// UEs that together hold 90% of the energy of the weakest left singular vector.
std::vector<std::size_t> weakest_direction_ues(const Eigen::VectorXcd &u)
{
    std::vector<std::size_t> order(static_cast<std::size_t>(u.size()));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::norm(u(static_cast<Eigen::Index>(a))) > std::norm(u(static_cast<Eigen::Index>(b)));
    });
    std::vector<std::size_t> ues;
    double energy = 0.0;
    for (auto k : order)
    {
        ues.push_back(k);
        energy += std::norm(u(static_cast<Eigen::Index>(k)));
        if (energy >= 0.9 * u.squaredNorm())
            break;
    }
    std::sort(ues.begin(), ues.end());
    return ues;
}
} // namespace

Precoder zero_forcing(const Eigen::MatrixXcd &h_dl_est, PowerNormalization normalization, double max_condition)
{
    const auto n_ue = h_dl_est.rows();
    const auto n_trx = h_dl_est.cols();
    if (n_ue == 0)
        throw DimensionError("zero_forcing: no UEs");
    if (n_trx < n_ue)
    {
        std::vector<std::size_t> all(static_cast<std::size_t>(n_ue));
        std::iota(all.begin(), all.end(), std::size_t{0});
        throw PrecodingError(fmt::format("zero_forcing: {} TRXs cannot separate {} UEs", n_trx, n_ue), all);
    }

    // H^H = Q R, so H = R^H Q^H shares its singular values and left singular vectors with R^H
    // and W = H^H (H H^H)^{-1} = Q R^{-H}.
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(h_dl_est.adjoint());
    const Eigen::MatrixXcd r = qr.matrixQR().topRows(n_ue).triangularView<Eigen::Upper>();
    const Eigen::BDCSVD<Eigen::MatrixXcd> svd(r.adjoint(), Eigen::ComputeFullU);
    const Eigen::VectorXd &s = svd.singularValues();
    const double smax = s(0);
    const double smin = s(n_ue - 1);
    if (!(smin > 0.0) || smax / smin > max_condition)
    {
        const auto ues = weakest_direction_ues(svd.matrixU().col(n_ue - 1));
        throw PrecodingError(fmt::format("zero_forcing: condition number {:.3e} exceeds {:.1e} (UEs {})",
                                         smin > 0.0 ? smax / smin : INFINITY, max_condition, fmt::join(ues, ",")),
                             ues);
    }

    Precoder p;
    p.normalization = normalization;
    Eigen::MatrixXcd r_inv_h = Eigen::MatrixXcd::Identity(n_ue, n_ue);
    r.adjoint().triangularView<Eigen::Lower>().solveInPlace(r_inv_h);
    p.weights = qr.householderQ() * Eigen::MatrixXcd::Identity(n_trx, n_ue) * r_inv_h;
    p.column_norms.resize(static_cast<std::size_t>(n_ue));
    for (Eigen::Index k = 0; k < n_ue; ++k)
        p.column_norms[static_cast<std::size_t>(k)] = p.weights.col(k).norm();

    if (normalization == PowerNormalization::PerColumn)
    {
        for (Eigen::Index k = 0; k < n_ue; ++k)
            p.weights.col(k) /= p.column_norms[static_cast<std::size_t>(k)];
    }
    else
    {
        p.weights *= std::sqrt(static_cast<double>(n_ue)) / p.weights.norm();
    }
    return p;
}

EffectiveChannel effective_channel(const Eigen::MatrixXcd &h_dl_true, const Precoder &w)
{
    if (h_dl_true.cols() != w.weights.rows() || h_dl_true.rows() != w.weights.cols())
        throw DimensionError(fmt::format("effective_channel: H is {}x{}, W is {}x{}", h_dl_true.rows(), h_dl_true.cols(),
                                         w.weights.rows(), w.weights.cols()));
    EffectiveChannel a;
    a.a.resize(static_cast<std::size_t>(h_dl_true.rows()));
    for (Eigen::Index k = 0; k < h_dl_true.rows(); ++k)
        a.a[static_cast<std::size_t>(k)] = (h_dl_true.row(k) * w.weights.col(k)).value();
    return a;
}

std::vector<double> detection_metrics(const Eigen::MatrixXcd &h_dl_true, const Precoder &w, const EffectiveChannel &a_hat,
                                      double noise_power, MetricMode mode)
{
    if (h_dl_true.cols() != w.weights.rows() || h_dl_true.rows() != w.weights.cols())
        throw DimensionError("detection_metrics: H and W do not conform");
    return detection_metrics(h_dl_true * w.weights, a_hat, noise_power, mode);
}

std::vector<double> detection_metrics(const Eigen::MatrixXcd &hw, const EffectiveChannel &a_hat, double noise_power,
                                      MetricMode mode)
{
    if (hw.rows() != hw.cols())
        throw DimensionError("detection_metrics: H W must be square (one stream per UE)");
    if (a_hat.size() != static_cast<std::size_t>(hw.rows()))
        throw DimensionError("detection_metrics: one effective-channel estimate per UE required");

    std::vector<double> out(a_hat.size());
    for (Eigen::Index k = 0; k < hw.rows(); ++k)
    {
        const cplx a = hw(k, k);
        const double interference = hw.row(k).squaredNorm() - std::norm(a);
        const auto uk = static_cast<std::size_t>(k);
        if (mode == MetricMode::Sinr)
        {
            out[uk] = std::norm(a) / (interference + noise_power);
            continue;
        }
        const cplx ah = a_hat.a[uk];
        if (ah == cplx{0.0, 0.0})
            throw DetectionError(fmt::format("detection_metrics: zero effective-channel estimate for UE {}", k), uk);
        out[uk] = std::norm(1.0 - a / ah) + (interference + noise_power) / std::norm(ah);
    }
    return out;
}

double spectral_efficiency_proxy(double distortion)
{
    return distortion < 1.0 ? std::log2(1.0 + 1.0 / distortion) : 0.0;
}

PhasorWalkthrough conjugate_precoding_walkthrough(double rx_global_deg, double lo_deg,
                                                  std::optional<double> reuse_measured_deg, SignModel model)
{
    constexpr double deg = std::numbers::pi / 180.0;
    const FrequencyGrid grid = flat_grid();
    const TrxChain chain = TrxChain::ideal(grid, lo_deg * deg);

    auto wrap = [](double d) {
        d = std::remainder(d, 360.0);
        if (std::abs(d) < 1e-9)
            return 0.0;
        return d <= -180.0 + 1e-9 ? 180.0 : d;
    };

    PhasorWalkthrough w;
    w.lo_deg = lo_deg;
    w.rx_global_deg = rx_global_deg;
    const cplx received = rx_transfer(chain, grid, 0, model) * std::polar(1.0, rx_global_deg * deg);
    w.measured_deg = reuse_measured_deg ? *reuse_measured_deg : wrap(std::arg(received) / deg);
    w.precoded_deg = wrap(-w.measured_deg);
    const cplx sent = tx_transfer(chain, grid, 0, model) * std::polar(1.0, w.precoded_deg * deg);
    w.tx_global_deg = wrap(std::arg(sent) / deg);
    return w;
}

} // namespace tddmimo
