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

// Acceptance suite. One line per criterion:  [PASS|FAIL] <id> <name> : <details> (<seconds>)
// Exit status is the number of failed criteria.

#include "irsdp/analysis.hpp"
#include "irsdp/chansim.hpp"
#include "irsdp/experiments.hpp"
#include "irsdp/solver.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace irsdp;

namespace
{
    struct Outcome
    {
        bool pass;
        std::string details;
    };

    struct Criterion
    {
        int id;
        std::string name;
        double budget_seconds;
        std::function<Outcome()> check;
    };

    const int workers = default_workers();

    std::mt19937_64 &rng()
    {
        static std::mt19937_64 r(20261019);
        return r;
    }

    complex cscg(double var = 1.0)
    {
        std::normal_distribution<double> nd(0.0, std::sqrt(var / 2.0));
        const double re = nd(rng());
        return {re, nd(rng())};
    }

    ChannelRealization random_channel(int M, int N)
    {
        CVector h_d(M), h_r(N);
        CMatrix G(N, M);
        for (int m = 0; m < M; ++m)
            h_d(m) = cscg(0.5);
        for (int n = 0; n < N; ++n)
            h_r(n) = cscg();
        for (int n = 0; n < N; ++n)
            for (int m = 0; m < M; ++m)
                G(n, m) = cscg();
        return {h_d, h_r, G};
    }

    // Direct row-channel gain, summed entry by entry.
    double direct_gain(const ChannelRealization &ch, const PhaseShiftVector &theta)
    {
        double g = 0.0;
        for (Eigen::Index m = 0; m < ch.antennas(); ++m)
        {
            complex acc = std::conj(ch.h_d()(m));
            for (Eigen::Index n = 0; n < ch.elements(); ++n)
                acc += std::conj(ch.h_r()(n)) * theta.phasor(static_cast<std::size_t>(n)) * ch.G()(n, m);
            g += std::norm(acc);
        }
        return g;
    }

    Outcome eta_values()
    {
        const double e1 = eta(PhaseResolution::bits(1)), e2 = eta(PhaseResolution::bits(2)), e3 = eta(PhaseResolution::bits(3));
        const double d1 = eta_db(PhaseResolution::bits(1)), d2 = eta_db(PhaseResolution::bits(2));
        struct Item
        {
            const char *label;
            double value, target, tol;
        };
        const Item items[] = {{"eta(1)", e1, 0.4053, 5e-5},     {"eta(2)", e2, 0.8106, 5e-5},        {"eta(3)", e3, 0.9496, 5e-5},
                              {"eta_db(1)", d1, -3.9224, 1e-3}, {"eta_db(2)", d2, -0.9224, 1e-3}};
        bool pass = true;
        std::string details;
        for (const auto &it : items)
        {
            const bool ok = std::abs(it.value - it.target) <= it.tol;
            pass = pass && ok;
            details += fmt::format("{}={:.5f} (target {} +-{:g}) {}; ", it.label, it.value, it.target, it.tol, ok ? "ok" : "MISS");
        }
        return {pass, details};
    }

    Outcome scaling_monte_carlo()
    {
        bool pass = true;
        std::string details;
        std::uint64_t seed = 1001;
        for (const auto res : {PhaseResolution::bits(1), PhaseResolution::bits(2), PhaseResolution::continuous()})
        {
            const ScalingLawParams p{res, 256, 1.0, 1.0};
            const auto mc = pr_monte_carlo(p, 5000, seed++, workers);
            const double closed = pr_closed_form(p);
            const double z = (mc.mean - closed) / mc.std_error;
            pass = pass && std::abs(z) <= 3.0;
            details += fmt::format("b={} mc={:.1f} se={:.1f} eq={:.1f} z={:+.2f}; ", res.label(), mc.mean, mc.std_error, closed, z);
        }
        return {pass, details};
    }

    Outcome squared_gain()
    {
        const std::vector<int> ns{64, 128, 256, 512, 1024};
        const double slope = power_gain_slope(PhaseResolution::bits(1), ns, 1000, 2002, workers);
        return {slope >= 1.9 && slope <= 2.1, fmt::format("b=1 slope={:.4f} over N=64..1024, 1000 trials per N, target [1.9, 2.1]", slope)};
    }

    Outcome asymptotic_gap()
    {
        ScenarioConfig cfg;
        cfg.suppress_direct_link = true;
        cfg.M = 1;
        cfg.trials = 500;
        cfg.seed = 3003;
        const auto out = sweep_elements(cfg, {1024}, {1}, {workers, {}});
        for (const auto &g : out.gaps)
            if (g.scheme == "ao-1bit")
            {
                const bool pass = std::abs(g.mean_of_gaps_db - 3.9224) <= 0.5;
                return {pass, fmt::format("N=1024 M=1 h_d=0, 500 draws: mean per-draw gap {:.4f} dB (gap of mean powers {:.4f} dB), target 3.9224 +-0.5",
                                          g.mean_of_gaps_db, g.gap_of_means_db)};
            }
        return {false, "ao-1bit gap missing"};
    }

    Outcome oracle_equivalence()
    {
        ScenarioConfig cfg;
        cfg.N = 8;
        cfg.M = 3;
        cfg.seed = 4004;
        const LinkBudget budget = cfg.budget();
        int dominated = 0, near = 0;
        const int instances = 200;
        double worst = 1.0;
        for (int t = 0; t < instances; ++t)
        {
            const auto ch = sample_channels(cfg, static_cast<std::uint64_t>(t));
            const SolverWorkspace ws(ch);
            const auto ao = solve_p1(ch, PhaseResolution::bits(1), budget);
            const auto ex = exhaustive_search(ws, 1, budget);
            if (ex.objective >= ao.objective * (1.0 - 1e-10))
                ++dominated;
            const double ratio = ao.objective / ex.objective;
            worst = std::min(worst, ratio);
            if (ratio >= 0.95)
                ++near;
        }
        const bool pass = dominated == instances && near >= 0.95 * instances;
        return {pass, fmt::format("N=8 M=3 b=1, {} instances: exhaustive >= AO on {}, AO >= 0.95x exhaustive on {} ({:.1f}%), worst ratio {:.4f}", instances,
                                  dominated, near, 100.0 * near / instances, worst)};
    }

    Outcome monotonicity()
    {
        int violations = 0, mismatches = 0;
        const int runs = 1000;
        std::size_t updates = 0;
        for (int r = 0; r < runs; ++r)
        {
            const int N = 1 + static_cast<int>(rng()() % 64);
            const int M = 1 + static_cast<int>(rng()() % 8);
            const int bits = 1 + static_cast<int>(rng()() % 3);
            const auto ch = random_channel(M, N);
            const SolverWorkspace ws(ch);
            std::vector<std::uint32_t> start(static_cast<std::size_t>(N));
            for (auto &k : start)
                k = static_cast<std::uint32_t>(rng()() % (1u << bits));
            const auto res = ao_discrete(ws, PhaseShiftVector::discrete(bits, start), 100, LinkBudget(1.0, 1.0));
            const auto &tr = res.objective_trace;
            updates += tr.size() - 1;
            for (std::size_t i = 1; i < tr.size(); ++i)
                if (tr[i] < tr[i - 1] - 1e-12 * std::abs(tr[i - 1]))
                    ++violations;
            if (std::abs(tr.back() - direct_gain(ch, res.theta)) > 1e-10 * res.objective)
                ++mismatches;
        }
        return {violations == 0 && mismatches == 0,
                fmt::format("{} AO runs, {} element updates: {} decreases beyond 1e-12, {} traces off the direct objective", runs, updates, violations, mismatches)};
    }

    Outcome benchmark_ordering()
    {
        ScenarioConfig cfg; // default geometry, N = 40, b = 1
        cfg.trials = 200;
        cfg.seed = 5005;
        const auto out = sweep_distance(cfg, {50.0}, {Scheme::ContinuousAo, Scheme::AoBits, Scheme::InitBits, Scheme::NoIrs}, {workers, {}});
        auto mean = [&](const std::string &s) {
            for (const auto &p : out.points)
                if (p.scheme == s)
                    return p.mean_watts;
            return std::numeric_limits<double>::quiet_NaN();
        };
        const double c = mean("continuous-ao"), ao = mean("ao-1bit"), init = mean("init-1bit"), none = mean("no-irs");
        const double saving = linear_to_db(none / ao);
        const bool pass = c <= ao && ao <= init && init <= none && saving >= 10.0;
        return {pass, fmt::format("d=50 N={} 200 trials: continuous {:.2f} <= ao {:.2f} <= init {:.2f} <= no-irs {:.2f} dBm; saving {:.2f} dB (need >= 10)", cfg.N,
                                  watts_to_dbm(c), watts_to_dbm(ao), watts_to_dbm(init), watts_to_dbm(none), saving)};
    }

    Outcome identities()
    {
        int objective_bad = 0, snr_bad = 0;
        double worst_obj = 0.0, worst_snr = 0.0;
        const LinkBudget budget(db_to_linear(20.0), dbm_to_watts(-80.0));
        std::uniform_real_distribution<double> angle(0.0, two_pi);
        for (int r = 0; r < 1000; ++r)
        {
            const int N = static_cast<int>(rng()() % 33);
            const int M = 1 + static_cast<int>(rng()() % 8);
            const auto ch = random_channel(M, N);
            std::vector<double> th(static_cast<std::size_t>(N));
            for (auto &a : th)
                a = angle(rng());
            const auto theta = PhaseShiftVector::continuous(th);
            const SolverWorkspace ws(ch);
            const double direct = direct_gain(ch, theta);
            const double rel = std::abs(ws.objective(theta.phasors()) - direct) / direct;
            worst_obj = std::max(worst_obj, rel);
            if (rel > 1e-10)
                ++objective_bad;

            const CVector h = combined_channel(ch, theta);
            const double p = required_power(h, budget);
            const double snr = receive_snr(ch, theta, mrt_beamformer(h, p), budget.sigma2());
            const double srel = std::abs(snr - budget.gamma()) / budget.gamma();
            worst_snr = std::max(worst_snr, srel);
            if (srel > 1e-10)
                ++snr_bad;
        }
        return {objective_bad == 0 && snr_bad == 0, fmt::format("1000 instances: quadratic form vs direct norm worst rel err {:.2e} ({} bad); MRT SNR round trip worst {:.2e} ({} bad)",
                                                                worst_obj, objective_bad, worst_snr, snr_bad)};
    }
}

int main()
{
    const std::vector<Criterion> criteria{
        {1, "eta table", 1.0, eta_values},
        {2, "scaling-law Monte Carlo", 60.0, scaling_monte_carlo},
        {3, "squared power gain", 120.0, squared_gain},
        {4, "asymptotic gap", 120.0, asymptotic_gap},
        {5, "oracle equivalence", 60.0, oracle_equivalence},
        {6, "monotonicity", 60.0, monotonicity},
        {7, "benchmark ordering", 180.0, benchmark_ordering},
        {8, "identities", 10.0, identities},
    };

    int failed = 0;
    for (const auto &c : criteria)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.check();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_seconds;
        const bool pass = o.pass && in_time;
        if (!pass)
            ++failed;
        std::printf("[%s] %d %s : %s (%.2fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.details.c_str(), secs,
                    in_time ? "" : fmt::format(", over the {:g}s budget", c.budget_seconds).c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
