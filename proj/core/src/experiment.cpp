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

#include "tddmimo/experiment.hpp"
#include "tddmimo/errors.hpp"

#include <fmt/format.h>
#include <fmt/os.h>

#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#ifndef TDDMIMO_VERSION
#define TDDMIMO_VERSION "0.0.0"
#endif

namespace tddmimo
{

std::string_view version()
{
    return TDDMIMO_VERSION;
}

void RunConfig::validate() const
{
    scenario.validate();
    if (horizon < 1)
        throw ConfigError("run: horizon must be at least 1");
    if (trials < 1)
        throw ConfigError("run: trials must be at least 1");
    if (threads < 1)
        throw ConfigError("run: threads must be at least 1");
    if (srs_noise_std < 0.0 || dmrs_noise_std < 0.0 || calibration_noise_std < 0.0)
        throw ConfigError("run: noise standard deviations must be non-negative");
    if (!(max_condition > 1.0))
        throw ConfigError("run: max_condition must exceed 1");
}

RunConfig run_config_from_json(const nlohmann::json &j, RunConfig cfg)
{
    if (!j.is_object())
        throw ConfigError("config: expected a JSON object at top level");
    try
    {
        if (auto it = j.find("preset"); it != j.end())
            cfg.scenario = preset_by_name(it->get<std::string>());
        for (const auto &[key, value] : j.items())
        {
            if (key == "preset" || key == "sweep")
                continue;
            if (key == "scenario")
                cfg.scenario = scenario_from_json(value, cfg.scenario);
            else if (key == "model")
                cfg.model = parse_sign_model(value.get<std::string>());
            else if (key == "topology")
                cfg.topology = parse_lo_topology(value.get<std::string>());
            else if (key == "calibration")
                cfg.calibration = parse_calibration_mode(value.get<std::string>());
            else if (key == "estimation")
                cfg.estimation = parse_estimation_mode(value.get<std::string>());
            else if (key == "metric")
                cfg.metric = parse_metric_mode(value.get<std::string>());
            else if (key == "normalization")
                cfg.normalization = parse_power_normalization(value.get<std::string>());
            else if (key == "horizon")
                cfg.horizon = value.get<int>();
            else if (key == "trials")
                cfg.trials = value.get<int>();
            else if (key == "seed")
                cfg.seed = value.get<std::uint64_t>();
            else if (key == "threads")
                cfg.threads = value.get<int>();
            else if (key == "max_condition")
                cfg.max_condition = value.get<double>();
            else if (key == "noise")
            {
                for (const auto &[nk, nv] : value.items())
                {
                    if (nk == "srs_std")
                        cfg.srs_noise_std = nv.get<double>();
                    else if (nk == "dmrs_std")
                        cfg.dmrs_noise_std = nv.get<double>();
                    else if (nk == "calibration_std")
                        cfg.calibration_noise_std = nv.get<double>();
                    else
                        throw ConfigError("config: unknown noise key '" + nk + "'");
                }
            }
            else
                throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

nlohmann::json to_json(const RunConfig &cfg)
{
    return {{"scenario", to_json(cfg.scenario)},
            {"model", std::string(to_string(cfg.model))},
            {"topology", std::string(to_string(cfg.topology))},
            {"calibration", std::string(to_string(cfg.calibration))},
            {"estimation", std::string(to_string(cfg.estimation))},
            {"metric", std::string(to_string(cfg.metric))},
            {"normalization", std::string(to_string(cfg.normalization))},
            {"horizon", cfg.horizon},
            {"trials", cfg.trials},
            {"seed", cfg.seed},
            {"threads", cfg.threads},
            {"max_condition", cfg.max_condition},
            {"noise",
             {{"srs_std", cfg.srs_noise_std},
              {"dmrs_std", cfg.dmrs_noise_std},
              {"calibration_std", cfg.calibration_noise_std}}}};
}

namespace
{

double mean(const std::vector<double> &v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

// Per-trial state of the time-stepped simulation.
class Trial
{
public:
    Trial(const RunConfig &cfg, int trial)
        : cfg_(cfg), sc_(cfg.scenario), layout_(cfg.scenario.layout), trial_(static_cast<std::uint64_t>(trial)),
          bs_map_(make_lo_map(cfg.topology, layout_)), ue_map_(independent_los(sc_.n_ue)),
          bs_streams_(cfg.seed, trial_, StreamTag::BaseStationLo, bs_map_.lo_count),
          ue_streams_(cfg.seed, trial_, StreamTag::UeLo, sc_.n_ue),
          srs_rng_(make_stream(cfg.seed, trial_, StreamTag::Sounding)),
          cal_rng_(make_stream(cfg.seed, trial_, StreamTag::Calibration)),
          dmrs_rng_(make_stream(cfg.seed, trial_, StreamTag::Dmrs))
    {
        Engine channel_rng = make_stream(cfg.seed, trial_, StreamTag::Channel);
        channels_ = draw_channels(sc_, channel_rng);
        hash_ = channel_hash(channels_);
        bs_phases_ = init_phases(bs_map_.lo_count, sc_.sample_time, sc_.sigma2, bs_streams_);
        ue_phases_ = init_phases(sc_.n_ue, sc_.sample_time, sc_.ue_sigma2, ue_streams_);
    }

    void execute(std::span<MetricsRow> out)
    {
        long n = 0;
        try
        {
            rebuild();
            sound();
            if (cfg_.calibration != CalibrationMode::None)
                calibrate(0);

            for (n = 0; n < cfg_.horizon; ++n)
            {
                if (n > 0)
                {
                    bs_phases_ = step(bs_phases_, bs_streams_);
                    ue_phases_ = step(ue_phases_, ue_streams_);
                    rebuild();
                    const int srs_period = sc_.schedule.srs_period;
                    if (srs_period > 0 && n % srs_period == 0)
                        sound();
                }
                out[static_cast<std::size_t>(n)] = measure(n);

                const int period = sc_.schedule.calibration_period;
                if (cfg_.calibration != CalibrationMode::None && period > 0 && (n + 1) % period == 0)
                {
                    calibrate(n);
                    out[static_cast<std::size_t>(n)].ota_cost = ota_cost_;
                }
            }
        }
        catch (const SimulationError &)
        {
            throw;
        }
        catch (const std::exception &e)
        {
            throw SimulationError(fmt::format("trial {}, step {}: {}", trial_, n, e.what()), static_cast<long>(trial_), n);
        }
    }

private:
    void rebuild()
    {
        const auto n_trx = layout_.trx_count();
        bs_chains_.resize(n_trx);
        for (std::size_t i = 0; i < n_trx; ++i)
            bs_chains_[i] = TrxChain::ideal(grid_, trx_phase(bs_phases_, bs_map_, i));
        ue_chains_.resize(sc_.n_ue);
        for (std::size_t k = 0; k < sc_.n_ue; ++k)
            ue_chains_[k] = TrxChain::ideal(grid_, trx_phase(ue_phases_, ue_map_, k));

        std::vector<cplx> t_bs(n_trx), r_bs(n_trx), t_ue(sc_.n_ue), r_ue(sc_.n_ue);
        for (std::size_t i = 0; i < n_trx; ++i)
        {
            t_bs[i] = tx_transfer(bs_chains_[i], grid_, 0, cfg_.model);
            r_bs[i] = rx_transfer(bs_chains_[i], grid_, 0, cfg_.model);
        }
        for (std::size_t k = 0; k < sc_.n_ue; ++k)
        {
            t_ue[k] = tx_transfer(ue_chains_[k], grid_, 0, cfg_.model);
            r_ue[k] = rx_transfer(ue_chains_[k], grid_, 0, cfg_.model);
        }

        // UE rows, TRX columns for both directions
        const auto rows = channels_.ue.rows();
        const auto cols = channels_.ue.cols();
        ul_.resize(rows, cols);
        dl_.resize(rows, cols);
        for (Eigen::Index i = 0; i < cols; ++i)
            for (Eigen::Index k = 0; k < rows; ++k)
            {
                const cplx h = channels_.ue(k, i);
                const auto ui = static_cast<std::size_t>(i);
                const auto uk = static_cast<std::size_t>(k);
                ul_(k, i) = ul_channel(r_bs[ui], h, t_ue[uk]);
                dl_(k, i) = dl_channel(r_ue[uk], h, t_bs[ui]);
            }
    }

    void sound()
    {
        ul_est_ = srs_estimate(ul_, cfg_.srs_noise_std, sc_.schedule.srs_repetitions, srs_rng_);
    }

    void calibrate(long n)
    {
        const auto clusters = layout_.cluster_count();
        const auto per_cluster = static_cast<Eigen::Index>(layout_.trx_per_cluster());
        const auto upc = sc_.ues_per_cluster();
        calibration_.resize(clusters);
        for (std::size_t c = 0; c < clusters; ++c)
        {
            const auto first = layout_.cluster_first_trx(c);
            const std::span<const TrxChain> chains(bs_chains_.data() + first, layout_.trx_per_cluster());
            const auto fi = static_cast<Eigen::Index>(first);
            const Eigen::MatrixXcd h0 = channels_.trp.block(fi, fi, per_cluster, per_cluster);
            try
            {
                calibration_[c] = calibrate_cluster(chains, h0, cfg_.model, cfg_.calibration_noise_std, cal_rng_, n);
            }
            catch (const CalibrationError &e)
            {
                throw CalibrationError(fmt::format("cluster {}: {}", c, e.what()), first + e.trx());
            }
            if (cfg_.calibration == CalibrationMode::Perfect)
            {
                auto &state = calibration_[c];
                state.ue_factors.resize(upc);
                for (std::size_t u = 0; u < upc; ++u)
                    state.ue_factors[u] = ue_reciprocity_factor(chains[0], ue_chains_[sc_.cluster_first_ue(c) + u],
                                                                cfg_.model);
            }
            ota_cost_ += calibration_[c].ota_slots;
        }
    }

    MetricsRow measure(long n)
    {
        const auto n_ue = static_cast<Eigen::Index>(sc_.n_ue);
        const auto per_cluster = static_cast<Eigen::Index>(layout_.trx_per_cluster());
        const auto upc = static_cast<Eigen::Index>(sc_.ues_per_cluster());

        // W is block-diagonal by cluster, so H W is assembled one cluster of UE columns at a time
        Eigen::MatrixXcd hw(n_ue, n_ue);
        for (std::size_t c = 0; c < layout_.cluster_count(); ++c)
        {
            const auto t0 = static_cast<Eigen::Index>(layout_.cluster_first_trx(c));
            const auto u0 = static_cast<Eigen::Index>(sc_.cluster_first_ue(c));
            Eigen::MatrixXcd est = ul_est_.block(u0, t0, upc, per_cluster);
            if (cfg_.calibration != CalibrationMode::None)
                est = apply_calibration(est, calibration_[c]);
            if (cfg_.calibration == CalibrationMode::Perfect)
                est = apply_ue_calibration(est, calibration_[c]);

            const Precoder p = zero_forcing(est, cfg_.normalization, cfg_.max_condition);
            hw.middleCols(u0, upc).noalias() = dl_.middleCols(t0, per_cluster) * p.weights;
        }

        EffectiveChannel a;
        a.a.resize(static_cast<std::size_t>(n_ue));
        for (Eigen::Index k = 0; k < n_ue; ++k)
            a.a[static_cast<std::size_t>(k)] = hw(k, k);

        EffectiveChannel a_hat;
        switch (cfg_.estimation)
        {
        case EstimationMode::Dmrs:
            a_hat = dmrs_estimate(a, cfg_.dmrs_noise_std, sc_.schedule.dmrs_pilots, dmrs_rng_);
            break;
        case EstimationMode::Blind:
            a_hat = blind_estimate(a);
            break;
        case EstimationMode::Genie:
            a_hat = a;
            break;
        }

        const double noise = sc_.noise_power();
        const auto sinr = detection_metrics(hw, a_hat, noise, MetricMode::Sinr);
        const auto distortion = detection_metrics(hw, a_hat, noise, MetricMode::Distortion);

        std::vector<double> eff(distortion.size()), se(distortion.size());
        for (std::size_t k = 0; k < distortion.size(); ++k)
        {
            eff[k] = effective_sinr(distortion[k]);
            se[k] = spectral_efficiency_proxy(distortion[k]);
        }

        MetricsRow row;
        row.trial = static_cast<int>(trial_);
        row.step = static_cast<int>(n);
        row.time_ms = static_cast<double>(n) * sc_.sample_time * 1e3;
        row.mean_sinr_db = to_db(mean(sinr));
        row.mean_eff_sinr_db = to_db(mean(eff));
        row.mean_distortion = mean(distortion);
        row.mean_se = mean(se);
        row.ota_cost = ota_cost_;
        row.staleness = calibration_.empty() ? 0 : calibration_.front().staleness(n);
        row.channel_hash = hash_;
        return row;
    }

    const RunConfig &cfg_;
    const Scenario &sc_;
    const NetworkLayout &layout_;
    const std::uint64_t trial_;
    const FrequencyGrid grid_ = flat_grid();

    LoMap bs_map_;
    LoMap ue_map_;
    PhaseStreams bs_streams_;
    PhaseStreams ue_streams_;
    Engine srs_rng_;
    Engine cal_rng_;
    Engine dmrs_rng_;

    ChannelSet channels_;
    std::uint64_t hash_ = 0;
    PhaseState bs_phases_;
    PhaseState ue_phases_;
    std::vector<TrxChain> bs_chains_;
    std::vector<TrxChain> ue_chains_;
    Eigen::MatrixXcd ul_;
    Eigen::MatrixXcd dl_;
    Eigen::MatrixXcd ul_est_;
    std::vector<CalibrationState> calibration_;
    std::size_t ota_cost_ = 0;
};

} // namespace

MetricsFrame run(const RunConfig &cfg)
{
    cfg.validate();
    MetricsFrame frame;
    frame.trials = cfg.trials;
    frame.horizon = cfg.horizon;
    frame.rows.resize(static_cast<std::size_t>(cfg.trials) * static_cast<std::size_t>(cfg.horizon));

    auto run_one = [&](int t) {
        Trial trial(cfg, t);
        trial.execute(std::span<MetricsRow>(frame.rows).subspan(static_cast<std::size_t>(t) * cfg.horizon,
                                                                static_cast<std::size_t>(cfg.horizon)));
    };

    const int workers = std::min(cfg.threads, cfg.trials);
    if (workers == 1)
    {
        for (int t = 0; t < cfg.trials; ++t)
            run_one(t);
        return frame;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try
                {
                    for (int t = w; t < cfg.trials; t += workers)
                        run_one(t);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            });
    }
    if (failure)
        std::rethrow_exception(failure);
    return frame;
}

StepSummary summarize(const MetricsFrame &frame)
{
    StepSummary s;
    const auto h = static_cast<std::size_t>(frame.horizon);
    for (auto *v : {&s.sinr_db, &s.sinr_ci_lo_db, &s.sinr_ci_hi_db, &s.eff_sinr_db, &s.eff_sinr_ci_lo_db,
                    &s.eff_sinr_ci_hi_db, &s.distortion, &s.distortion_ci95, &s.se, &s.se_ci95})
        v->assign(h, 0.0);

    const double trials = frame.trials;
    auto stats = [&](auto value, int step) {
        double sum = 0.0, sum2 = 0.0;
        for (int t = 0; t < frame.trials; ++t)
        {
            const double x = value(frame.at(t, step));
            sum += x;
            sum2 += x * x;
        }
        const double m = sum / trials;
        const double var = frame.trials > 1 ? std::max(0.0, (sum2 - trials * m * m) / (trials - 1.0)) : 0.0;
        return std::pair{m, 1.96 * std::sqrt(var / trials)};
    };
    auto db_bound = [](double v) { return v > 0.0 ? to_db(v) : -INFINITY; };

    for (int n = 0; n < frame.horizon; ++n)
    {
        const auto i = static_cast<std::size_t>(n);
        const auto [sinr, sinr_ci] = stats([](const MetricsRow &r) { return std::pow(10.0, r.mean_sinr_db / 10.0); }, n);
        const auto [eff, eff_ci] = stats([](const MetricsRow &r) { return std::pow(10.0, r.mean_eff_sinr_db / 10.0); }, n);
        const auto [dist, dist_ci] = stats([](const MetricsRow &r) { return r.mean_distortion; }, n);
        const auto [se, se_ci] = stats([](const MetricsRow &r) { return r.mean_se; }, n);
        s.sinr_db[i] = to_db(sinr);
        s.sinr_ci_lo_db[i] = db_bound(sinr - sinr_ci);
        s.sinr_ci_hi_db[i] = to_db(sinr + sinr_ci);
        s.eff_sinr_db[i] = to_db(eff);
        s.eff_sinr_ci_lo_db[i] = db_bound(eff - eff_ci);
        s.eff_sinr_ci_hi_db[i] = to_db(eff + eff_ci);
        s.distortion[i] = dist;
        s.distortion_ci95[i] = dist_ci;
        s.se[i] = se;
        s.se_ci95[i] = se_ci;
    }
    return s;
}

std::string csv_header()
{
    return "trial,step,time_ms,mean_sinr_db,mean_eff_sinr_db,mean_distortion,mean_se,ota_cost,staleness,channel_hash";
}

void emit_csv(const MetricsFrame &frame, const std::filesystem::path &path, double sample_time)
{
    (void)sample_time;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("emit_csv: cannot open '" + path.string() + "' for writing");
    out << csv_header() << '\n';
    for (const auto &r : frame.rows)
        out << fmt::format("{},{},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{},{},{:016x}\n", r.trial, r.step, r.time_ms,
                           r.mean_sinr_db, r.mean_eff_sinr_db, r.mean_distortion, r.mean_se, r.ota_cost, r.staleness,
                           r.channel_hash);
    if (!out)
        throw std::runtime_error("emit_csv: write to '" + path.string() + "' failed");
}

void emit_summary_csv(const MetricsFrame &frame, const std::filesystem::path &path, double sample_time)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("emit_summary_csv: cannot open '" + path.string() + "' for writing");
    out << "step,time_ms,trials,mean_sinr_db,sinr_ci_lo_db,sinr_ci_hi_db,mean_eff_sinr_db,eff_sinr_ci_lo_db,"
           "eff_sinr_ci_hi_db,mean_distortion,distortion_ci95,mean_se,se_ci95\n";
    if (frame.rows.empty())
        return;
    const auto s = summarize(frame);
    for (int n = 0; n < frame.horizon; ++n)
    {
        const auto i = static_cast<std::size_t>(n);
        out << fmt::format("{},{:.9g},{},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g}\n", n,
                           n * sample_time * 1e3, frame.trials, s.sinr_db[i], s.sinr_ci_lo_db[i], s.sinr_ci_hi_db[i],
                           s.eff_sinr_db[i], s.eff_sinr_ci_lo_db[i], s.eff_sinr_ci_hi_db[i], s.distortion[i],
                           s.distortion_ci95[i], s.se[i], s.se_ci95[i]);
    }
    if (!out)
        throw std::runtime_error("emit_summary_csv: write to '" + path.string() + "' failed");
}

std::string tuple_name(const SweepTuple &t)
{
    std::string name = fmt::format("{}_{}_{}", to_string(t.model), to_string(t.topology), to_string(t.calibration));
    if (t.calibration_period > 0)
        name += fmt::format("_p{}", t.calibration_period);
    return name + "_" + std::string(to_string(t.estimation));
}

RunConfig apply_tuple(RunConfig cfg, const SweepTuple &t)
{
    cfg.model = t.model;
    cfg.topology = t.topology;
    cfg.calibration = t.calibration;
    cfg.scenario.schedule.calibration_period = t.calibration_period;
    cfg.estimation = t.estimation;
    return cfg;
}

std::vector<SweepTuple> headline_sweep()
{
    return {
        {SignModel::Inaccurate, LoTopology::FreeRunningPerTrx, CalibrationMode::None, 0, EstimationMode::Dmrs},
        {SignModel::Correct, LoTopology::FreeRunningPerTrx, CalibrationMode::Perfect, 0, EstimationMode::Blind},
        {SignModel::Correct, LoTopology::FreeRunningPerTrx, CalibrationMode::Relative, 0, EstimationMode::Dmrs},
        {SignModel::Correct, LoTopology::LockedPerCluster, CalibrationMode::Relative, 0, EstimationMode::Dmrs},
    };
}

std::vector<SweepTuple> sweep_from_json(const nlohmann::json &j)
{
    if (!j.is_array() || j.empty())
        throw ConfigError("sweep: expected a non-empty array of tuples");
    std::vector<SweepTuple> out;
    try
    {
        for (const auto &item : j)
        {
            SweepTuple t;
            for (const auto &[key, value] : item.items())
            {
                if (key == "model")
                    t.model = parse_sign_model(value.get<std::string>());
                else if (key == "topology")
                    t.topology = parse_lo_topology(value.get<std::string>());
                else if (key == "calibration")
                    t.calibration = parse_calibration_mode(value.get<std::string>());
                else if (key == "calibration_period")
                    t.calibration_period = value.get<int>();
                else if (key == "estimation")
                    t.estimation = parse_estimation_mode(value.get<std::string>());
                else
                    throw ConfigError("sweep: unknown key '" + key + "'");
            }
            out.push_back(t);
        }
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError(std::string("sweep: ") + e.what());
    }
    return out;
}

std::vector<std::filesystem::path> run_matrix(const RunConfig &base, std::span<const SweepTuple> sweep,
                                              const std::filesystem::path &out_dir)
{
    if (sweep.empty())
        throw ConfigError("run_matrix: at least one sweep tuple required");
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> files;
    for (const auto &t : sweep)
    {
        const RunConfig cfg = apply_tuple(base, t);
        const MetricsFrame frame = run(cfg);
        const auto name = tuple_name(t);
        const auto csv = out_dir / (name + ".csv");
        emit_csv(frame, csv, cfg.scenario.sample_time);
        emit_summary_csv(frame, out_dir / (name + "_summary.csv"), cfg.scenario.sample_time);
        files.push_back(csv);
    }
    return files;
}

std::uint64_t fnv1a(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes)
    {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

void write_manifest(const std::filesystem::path &path, const nlohmann::json &config, std::uint64_t seed,
                    std::span<const std::filesystem::path> files)
{
    nlohmann::json m;
    m["tool"] = "tddmimo";
    m["version"] = std::string(version());
    m["seed"] = seed;
    m["config_hash"] = fmt::format("{:016x}", fnv1a(config.dump()));
    m["config"] = config;
    m["eigen_version"] = fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION);
    auto &list = m["files"] = nlohmann::json::array();
    for (const auto &f : files)
        list.push_back(f.filename().string());
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_manifest: cannot open '" + path.string() + "'");
    out << m.dump(2) << '\n';
}

} // namespace tddmimo
