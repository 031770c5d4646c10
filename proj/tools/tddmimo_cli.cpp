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

#include "tddmimo/errors.hpp"
#include "tddmimo/experiment.hpp"
#include "tddmimo/signal_oracle.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace tddmimo;

namespace
{

nlohmann::json load_json(const fs::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config '" + path.string() + "'");
    try
    {
        return nlohmann::json::parse(in, nullptr, true, true);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw ConfigError("config '" + path.string() + "': " + e.what());
    }
}

RunConfig load_config(const fs::path &path, const std::optional<std::string> &preset,
                      const std::optional<std::uint64_t> &seed, nlohmann::json &doc)
{
    doc = path.empty() ? nlohmann::json::object() : load_json(path);
    if (preset)
        doc["preset"] = *preset;
    if (seed)
        doc["seed"] = *seed;
    return run_config_from_json(doc);
}

int simulate(const fs::path &config, const std::optional<std::string> &preset,
             const std::optional<std::uint64_t> &seed, const fs::path &out)
{
    nlohmann::json doc;
    const RunConfig cfg = load_config(config, preset, seed, doc);
    const auto start = std::chrono::steady_clock::now();
    const MetricsFrame frame = run(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    fs::create_directories(out);
    const std::vector<fs::path> files{out / "run.csv", out / "run_summary.csv"};
    emit_csv(frame, files[0], cfg.scenario.sample_time);
    emit_summary_csv(frame, files[1], cfg.scenario.sample_time);
    write_manifest(out / "manifest.json", to_json(cfg), cfg.seed, files);

    const auto s = summarize(frame);
    const bool eff = cfg.metric == MetricMode::Distortion;
    const auto &curve = eff ? s.eff_sinr_db : s.sinr_db;
    fmt::print("simulate: {} trials x {} steps in {:.2f} s; {} n=0 {:.2f} dB, n={} {:.2f} dB -> {}\n", cfg.trials,
               cfg.horizon, secs, eff ? "effective SINR" : "SINR", curve.front(), cfg.horizon - 1, curve.back(),
               out.string());
    return 0;
}

int sweep(const fs::path &config, const std::optional<std::uint64_t> &seed, const fs::path &out)
{
    nlohmann::json doc;
    const RunConfig base = load_config(config, std::nullopt, seed, doc);
    const auto tuples = doc.contains("sweep") ? sweep_from_json(doc["sweep"]) : headline_sweep();
    const auto files = run_matrix(base, tuples, out);
    write_manifest(out / "manifest.json", to_json(base), base.seed, files);
    for (const auto &f : files)
        fmt::print("sweep: wrote {}\n", f.string());
    return 0;
}

int verify(int trials, std::uint64_t seed, int subcarriers, long carrier_ratio, int oversampling, double threshold)
{
    PassbandConfig cfg;
    cfg.grid.subcarriers = subcarriers;
    cfg.grid.carrier_hz = static_cast<double>(carrier_ratio) * cfg.grid.spacing_hz;
    cfg.oversampling = oversampling;
    const auto report = verify_model(cfg, trials, seed);
    fmt::print("{}\n", report.summary(threshold));
    return report.max_relative_error < threshold ? 0 : 1;
}

int walkthrough(double rx_deg, double lo_deg, double drifted_lo_deg, const fs::path &out)
{
    const auto fresh = conjugate_precoding_walkthrough(rx_deg, lo_deg);
    const auto drifted = conjugate_precoding_walkthrough(rx_deg, drifted_lo_deg);
    const auto stale = conjugate_precoding_walkthrough(rx_deg, drifted_lo_deg, fresh.measured_deg);

    std::ofstream file;
    std::ostream *os = &std::cout;
    if (!out.empty())
    {
        file.open(out);
        if (!file)
            throw std::runtime_error("walkthrough: cannot open '" + out.string() + "'");
        os = &file;
    }
    *os << "case,lo_deg,rx_global_deg,measured_deg,precoded_deg,tx_global_deg\n";
    for (const auto &[name, w] : {std::pair{"fresh", fresh}, std::pair{"drifted", drifted}, std::pair{"stale", stale}})
        *os << fmt::format("{},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g}\n", name, w.lo_deg, w.rx_global_deg, w.measured_deg,
                           w.precoded_deg, w.tx_global_deg);
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"tddmimo: reciprocity calibration and LO phase drift in TDD massive MIMO"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    fs::path config;
    fs::path out = "out";
    std::optional<std::string> preset;
    std::optional<std::uint64_t> seed;

    auto *sim = app.add_subcommand("simulate", "Run one configuration and write run.csv, run_summary.csv, manifest.json");
    sim->add_option("--config", config, "JSON run configuration")->check(CLI::ExistingFile);
    sim->add_option("--preset", preset, "Scenario preset")->check(CLI::IsMember({"desk", "paper"}));
    sim->add_option("--seed", seed, "Master seed");
    sim->add_option("--out", out, "Output directory");

    auto *swp = app.add_subcommand("sweep", "Run the sweep matrix (config 'sweep' array or the headline tuples)");
    swp->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    swp->add_option("--seed", seed, "Master seed");
    swp->add_option("--out", out, "Output directory");

    int trials = 100;
    std::uint64_t verify_seed = 1;
    int subcarriers = 16;
    long carrier_ratio = 64;
    int oversampling = 512;
    double threshold = 1e-9;
    auto *ver = app.add_subcommand("verify-model", "Check the TX/RX model against the passband chain");
    ver->add_option("--trials", trials, "Random trials")->check(CLI::PositiveNumber);
    ver->add_option("--seed", verify_seed, "Seed");
    ver->add_option("--subcarriers", subcarriers, "L");
    ver->add_option("--carrier-ratio", carrier_ratio, "f_c / F");
    ver->add_option("--oversampling", oversampling, "Samples per symbol");
    ver->add_option("--threshold", threshold, "Maximum allowed relative error");

    double rx_deg = 90.0, lo_deg = 45.0, drifted_deg = 0.0;
    fs::path walk_out;
    auto *walk = app.add_subcommand("walkthrough", "Export the conjugate-precoding phasor example as CSV");
    walk->add_option("--rx", rx_deg, "Global RX phase [deg]");
    walk->add_option("--lo", lo_deg, "LO phase at measurement [deg]");
    walk->add_option("--drifted-lo", drifted_deg, "LO phase at transmission [deg]");
    walk->add_option("--out", walk_out, "CSV path (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*sim)
            return simulate(config, preset, seed, out);
        if (*swp)
            return sweep(config, seed, out);
        if (*ver)
            return verify(trials, verify_seed, subcarriers, carrier_ratio, oversampling, threshold);
        if (*walk)
            return walkthrough(rx_deg, lo_deg, drifted_deg, walk_out);
    }
    catch (const SimulationError &e)
    {
        fmt::print(stderr, "error: {}\n", e.what());
        return 3;
    }
    catch (const std::invalid_argument &e)
    {
        fmt::print(stderr, "configuration error: {}\n", e.what());
        return 2;
    }
    catch (const std::exception &e)
    {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
