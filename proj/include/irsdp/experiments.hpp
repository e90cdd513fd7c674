// SPDX-License-Identifier: Apache-2.0
//
// irsdp: transmit power minimization for IRS-aided downlinks with discrete phase shifts
// Copyright (C) 2026 The irsdp authors
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

#pragma once

// Monte Carlo sweeps comparing the benchmark schemes.
//
// Within one sweep point every scheme sees the same channel draw for a given trial index
// (paired comparison). Trial t at every point uses trial_rng(cfg.seed, t). Powers are averaged
// in watts and only then converted to dBm.

#include "irsdp/analysis.hpp"
#include "irsdp/chansim.hpp"
#include "irsdp/parallel.hpp"
#include "irsdp/solver.hpp"

#include <algorithm>
#include <cstring>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irsdp
{
    enum class Scheme
    {
        ContinuousAo,
        Exhaustive1Bit,
        AoBits,
        InitBits,
        NoIrs,
    };

    inline const std::vector<Scheme> &all_schemes()
    {
        static const std::vector<Scheme> schemes{Scheme::ContinuousAo, Scheme::Exhaustive1Bit, Scheme::AoBits, Scheme::InitBits, Scheme::NoIrs};
        return schemes;
    }

    // Generic scheme name, as accepted by parse_scheme.
    inline std::string scheme_name(Scheme s)
    {
        switch (s)
        {
        case Scheme::ContinuousAo:
            return "continuous-ao";
        case Scheme::Exhaustive1Bit:
            return "exhaustive-1bit";
        case Scheme::AoBits:
            return "ao-bbit";
        case Scheme::InitBits:
            return "init-bbit";
        case Scheme::NoIrs:
            return "no-irs";
        }
        return "unknown";
    }

    inline Scheme parse_scheme(std::string_view name)
    {
        for (Scheme s : all_schemes())
            if (scheme_name(s) == name)
                return s;
        throw invalid_input("unknown scheme '" + std::string(name) + "'");
    }

    // Name used in result rows, with the bit count filled in ("ao-2bit").
    inline std::string scheme_label(Scheme s, PhaseResolution res)
    {
        switch (s)
        {
        case Scheme::AoBits:
            return "ao-" + res.label() + "bit";
        case Scheme::InitBits:
            return "init-" + res.label() + "bit";
        default:
            return scheme_name(s);
        }
    }

    // FNV-1a over the raw channel coefficients.
    inline std::uint64_t realization_hash(const ChannelRealization &ch)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto mix = [&h](const complex *data, Eigen::Index n) {
            const auto *bytes = reinterpret_cast<const unsigned char *>(data);
            for (std::size_t i = 0; i < static_cast<std::size_t>(n) * sizeof(complex); ++i)
            {
                h ^= bytes[i];
                h *= 0x100000001b3ULL;
            }
        };
        mix(ch.h_d().data(), ch.h_d().size());
        mix(ch.h_r().data(), ch.h_r().size());
        mix(ch.G().data(), ch.G().size());
        return h;
    }

    struct TrialRecord
    {
        std::string scheme;
        double d_m = 0.0;
        int N = 0;
        int M = 0;
        std::string b; // bits, "cont", or "none" for the no-IRS scheme
        int trial = 0;
        double power_watts = 0.0;
        double power_dbm = 0.0;
        double objective = 0.0;
        int iterations = 0;
        bool converged = false;
        std::uint64_t seed = 0;
        std::uint64_t realization_hash = 0;
    };

    struct SweepResult
    {
        std::string scheme;
        double x = 0.0; // d in meters or N, depending on the sweep
        double d_m = 0.0;
        int N = 0;
        std::string b;
        std::vector<double> powers_watts;
        double mean_watts = 0.0;
        double std_error_watts = 0.0;
        double mean_dbm = 0.0;
        int trials = 0;
        std::uint64_t seed = 0;
    };

    // Gap between a discrete scheme and the continuous benchmark at one sweep point.
    struct GapRow
    {
        double x = 0.0;
        std::string scheme;
        double gap_of_means_db = 0.0;   // 10 log10(mean P_scheme / mean P_cont)
        double mean_of_gaps_db = 0.0;   // mean over trials of 10 log10(P_scheme / P_cont)
    };

    struct SweepOutput
    {
        std::vector<SweepResult> points;
        std::vector<TrialRecord> records; // point-major, then scheme, then trial
        std::vector<GapRow> gaps;
        std::vector<std::string> warnings;
    };

    struct SweepSettings
    {
        int workers = 1;
        SolveOptions solve;
    };

    namespace detail
    {
        inline TrialRecord make_record(std::string scheme, const ScenarioConfig &cfg, std::string b, int trial, const SolveResult &r, std::uint64_t hash)
        {
            return TrialRecord{std::move(scheme), cfg.d, cfg.N, cfg.M, std::move(b), trial, r.power_watts, watts_to_dbm(r.power_watts),
                               r.objective, r.iterations, r.converged, cfg.seed, hash};
        }

        inline SweepResult summarize(const std::vector<TrialRecord> &rows, double x)
        {
            SweepResult s;
            s.scheme = rows.front().scheme;
            s.x = x;
            s.d_m = rows.front().d_m;
            s.N = rows.front().N;
            s.b = rows.front().b;
            s.seed = rows.front().seed;
            s.trials = static_cast<int>(rows.size());
            for (const auto &r : rows)
                s.powers_watts.push_back(r.power_watts);
            std::tie(s.mean_watts, s.std_error_watts) = mean_and_se(s.powers_watts);
            s.mean_dbm = watts_to_dbm(s.mean_watts);
            return s;
        }

        inline GapRow gap(const std::vector<TrialRecord> &scheme_rows, const std::vector<TrialRecord> &cont_rows, double x)
        {
            GapRow g;
            g.x = x;
            g.scheme = scheme_rows.front().scheme;
            double ps = 0.0, pc = 0.0, sum_db = 0.0;
            for (std::size_t t = 0; t < scheme_rows.size(); ++t)
            {
                ps += scheme_rows[t].power_watts;
                pc += cont_rows[t].power_watts;
                sum_db += linear_to_db(scheme_rows[t].power_watts / cont_rows[t].power_watts);
            }
            g.gap_of_means_db = linear_to_db(ps / pc);
            g.mean_of_gaps_db = sum_db / static_cast<double>(scheme_rows.size());
            return g;
        }

        // Fills slots[scheme][trial] for every sweep point and turns them into records and summaries.
        inline void collect(SweepOutput &out, std::vector<std::vector<std::vector<TrialRecord>>> &grid, const std::vector<double> &xs)
        {
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                std::optional<std::size_t> cont;
                for (std::size_t s = 0; s < grid[i].size(); ++s)
                    if (!grid[i][s].empty() && grid[i][s].front().scheme == scheme_name(Scheme::ContinuousAo))
                        cont = s;
                for (std::size_t s = 0; s < grid[i].size(); ++s)
                {
                    auto &rows = grid[i][s];
                    if (rows.empty())
                        continue;
                    out.points.push_back(summarize(rows, xs[i]));
                    if (cont && s != *cont && rows.front().b != "none")
                        out.gaps.push_back(gap(rows, grid[i][*cont], xs[i]));
                    for (auto &r : rows)
                        out.records.push_back(std::move(r));
                }
            }
        }
    }

    // Required power versus AP-user horizontal distance for the selected schemes.
    inline SweepOutput sweep_distance(const ScenarioConfig &cfg, const std::vector<double> &d_values, const std::vector<Scheme> &schemes,
                                      const SweepSettings &settings = {})
    {
        cfg.validate();
        if (d_values.empty())
            throw invalid_input("no distance values given");
        for (double d : d_values)
            if (!(d > 0.0) || d > cfg.d0)
                throw invalid_input("distance values must lie in (0, d0]");
        if (schemes.empty())
            throw invalid_input("no schemes selected");

        SweepOutput out;
        std::vector<Scheme> active;
        for (Scheme s : schemes)
        {
            if (std::find(active.begin(), active.end(), s) != active.end())
                continue;
            if (s == Scheme::Exhaustive1Bit && cfg.N > exhaustive_limit_bits)
            {
                out.warnings.push_back("exhaustive-1bit skipped: N = " + std::to_string(cfg.N) + " exceeds the enumeration limit of " +
                                       std::to_string(exhaustive_limit_bits) + " elements");
                continue;
            }
            if ((s == Scheme::AoBits || s == Scheme::InitBits) && cfg.resolution.is_continuous())
            {
                out.warnings.push_back(scheme_name(s) + " skipped: phase resolution is continuous");
                continue;
            }
            active.push_back(s);
        }

        const std::size_t points = d_values.size();
        const std::size_t trials = static_cast<std::size_t>(cfg.trials);
        std::vector<std::vector<std::vector<TrialRecord>>> grid(points, std::vector<std::vector<TrialRecord>>(active.size(), std::vector<TrialRecord>(trials)));
        const LinkBudget budget = cfg.budget();

        parallel_for(points * trials, settings.workers, [&](std::size_t job) {
            const std::size_t i = job / trials;
            const int t = static_cast<int>(job % trials);
            ScenarioConfig point = cfg;
            point.d = d_values[i];
            const ChannelRealization ch = sample_channels(point, static_cast<std::uint64_t>(t));
            const std::uint64_t hash = realization_hash(ch);

            std::optional<PipelineResult> pipeline;
            auto stages = [&]() -> const PipelineResult & {
                if (!pipeline)
                    pipeline = solve_p1_stages(ch, cfg.resolution.is_continuous() ? PhaseResolution::bits(1) : cfg.resolution, budget, settings.solve);
                return *pipeline;
            };
            const std::string bits = cfg.resolution.label();

            for (std::size_t s = 0; s < active.size(); ++s)
            {
                TrialRecord &slot = grid[i][s][static_cast<std::size_t>(t)];
                switch (active[s])
                {
                case Scheme::ContinuousAo:
                    slot = detail::make_record(scheme_name(active[s]), point, "cont", t, stages().continuous, hash);
                    break;
                case Scheme::AoBits:
                    slot = detail::make_record(scheme_label(active[s], cfg.resolution), point, bits, t, stages().final_result, hash);
                    break;
                case Scheme::InitBits:
                    slot = detail::make_record(scheme_label(active[s], cfg.resolution), point, bits, t, *stages().initialization, hash);
                    break;
                case Scheme::Exhaustive1Bit:
                    slot = detail::make_record(scheme_name(active[s]), point, "1", t, exhaustive_search(SolverWorkspace(ch), 1, budget), hash);
                    break;
                case Scheme::NoIrs: {
                    const ChannelRealization direct = ch.without_irs();
                    const SolverWorkspace ws(direct);
                    slot = detail::make_record(scheme_name(active[s]), point, "none", t, evaluate_phases(ws, PhaseShiftVector::zeros(0), budget), hash);
                    break;
                }
                }
            }
        });

        detail::collect(out, grid, d_values);
        return out;
    }

    // Required power versus the number of reflecting elements, for each resolution in b_values
    // (AO and initialization scheme) and for the continuous benchmark. With
    // cfg.suppress_direct_link the AP is reduced to one antenna and h_d = 0.
    inline SweepOutput sweep_elements(const ScenarioConfig &cfg_in, const std::vector<int> &n_values, const std::vector<int> &b_values,
                                      const SweepSettings &settings = {})
    {
        ScenarioConfig cfg = cfg_in;
        if (cfg.suppress_direct_link)
            cfg.M = 1;
        cfg.validate();
        if (n_values.empty())
            throw invalid_input("no N values given");
        for (std::size_t i = 0; i < n_values.size(); ++i)
            if (n_values[i] < 1 || (i > 0 && n_values[i] <= n_values[i - 1]))
                throw invalid_input("N values must be positive and strictly ascending");
        std::vector<PhaseResolution> resolutions;
        for (int b : b_values)
            resolutions.push_back(PhaseResolution::bits(b));

        const std::size_t points = n_values.size();
        const std::size_t trials = static_cast<std::size_t>(cfg.trials);
        const std::size_t columns = 1 + 2 * resolutions.size(); // continuous, then (ao, init) per b
        std::vector<std::vector<std::vector<TrialRecord>>> grid(points, std::vector<std::vector<TrialRecord>>(columns, std::vector<TrialRecord>(trials)));
        const LinkBudget budget = cfg.budget();

        parallel_for(points * trials, settings.workers, [&](std::size_t job) {
            const std::size_t i = job / trials;
            const int t = static_cast<int>(job % trials);
            ScenarioConfig point = cfg;
            point.N = n_values[i];
            const ChannelRealization ch = sample_channels(point, static_cast<std::uint64_t>(t));
            const std::uint64_t hash = realization_hash(ch);
            const SolverWorkspace ws(ch);

            const SolveResult cont = continuous_phase_solution(ws, PhaseShiftVector::zeros(static_cast<std::size_t>(point.N)), budget, settings.solve);
            grid[i][0][static_cast<std::size_t>(t)] = detail::make_record(scheme_name(Scheme::ContinuousAo), point, "cont", t, cont, hash);
            for (std::size_t r = 0; r < resolutions.size(); ++r)
            {
                const int b = resolutions[r].bit_count();
                const PhaseShiftVector start = quantize_phases(cont.theta, b);
                grid[i][1 + 2 * r][static_cast<std::size_t>(t)] = detail::make_record(
                    scheme_label(Scheme::AoBits, resolutions[r]), point, resolutions[r].label(), t, ao_discrete(ws, start, settings.solve.max_sweeps, budget), hash);
                grid[i][2 + 2 * r][static_cast<std::size_t>(t)] = detail::make_record(
                    scheme_label(Scheme::InitBits, resolutions[r]), point, resolutions[r].label(), t, evaluate_phases(ws, start, budget), hash);
            }
        });

        SweepOutput out;
        std::vector<double> xs(n_values.begin(), n_values.end());
        detail::collect(out, grid, xs);
        return out;
    }

    struct EtaRow
    {
        std::string b;
        double eta;
        double eta_db;
    };

    inline std::vector<EtaRow> eta_table(int b_max)
    {
        if (b_max < 1)
            throw invalid_input("b_max must be at least 1");
        std::vector<EtaRow> rows;
        for (int b = 1; b <= b_max; ++b)
        {
            const auto res = PhaseResolution::bits(b);
            rows.push_back({res.label(), eta(res), eta_db(res)});
        }
        rows.push_back({"cont", eta(PhaseResolution::continuous()), eta_db(PhaseResolution::continuous())});
        return rows;
    }
}
