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

// Scenario geometry, distance-based path loss and i.i.d. Rayleigh channel draws.
//
// Layout: AP and IRS sit d0 apart on one horizontal line; the user moves on a parallel line
// dv below it, at horizontal distance d from the AP.
//
// Every trial gets its own generator, seeded from a hash of (seed, trial index), so a
// realization depends only on those two numbers and never on the order trials are run in.

#include "irsdp/model.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace irsdp
{
    struct ScenarioConfig
    {
        int M = 5;
        int N = 40;
        PhaseResolution resolution = PhaseResolution::bits(1);

        double gamma_db = 20.0;
        double sigma2_dbm = -80.0;

        double d0 = 50.0;
        double dv = 2.0;
        double d = 50.0;

        double alpha_au = 3.4;
        double alpha_ai = 2.2;
        double alpha_iu = 2.8;
        double ref_loss_db = 30.0;

        std::uint64_t seed = 1;
        int trials = 200;

        // Forces h_d = 0; sweeps additionally force M = 1 when this is set.
        bool suppress_direct_link = false;

        LinkBudget budget() const { return LinkBudget::from_db(gamma_db, sigma2_dbm); }

        void validate() const
        {
            if (M < 1)
                throw invalid_input("M must be at least 1");
            if (N < 0)
                throw invalid_input("N must be non-negative");
            if (trials < 1)
                throw invalid_input("trials must be at least 1");
            if (!(d0 > 0.0) || !(dv >= 0.0) || !std::isfinite(d) || !std::isfinite(d0) || !std::isfinite(dv))
                throw invalid_input("distances must be finite with d0 > 0 and dv >= 0");
            if (!(alpha_au > 0.0) || !(alpha_ai > 0.0) || !(alpha_iu > 0.0))
                throw invalid_input("path-loss exponents must be positive");
            if (!std::isfinite(gamma_db) || !std::isfinite(sigma2_dbm) || !std::isfinite(ref_loss_db))
                throw invalid_input("gamma, noise and reference loss must be finite");
            if (!(std::hypot(d, dv) > 0.0) || !(std::hypot(d0 - d, dv) > 0.0))
                throw invalid_input("user coincides with the AP or the IRS");
        }
    };

    struct LinkDistances
    {
        double ap_user;  // d1
        double irs_user; // d2
        double ap_irs;   // d0
    };

    inline LinkDistances derived_distances(const ScenarioConfig &cfg)
    {
        return {std::sqrt(cfg.d * cfg.d + cfg.dv * cfg.dv), std::sqrt((cfg.d0 - cfg.d) * (cfg.d0 - cfg.d) + cfg.dv * cfg.dv), cfg.d0};
    }

    // Linear power gain 10^(-L0/10) * dist^(-alpha); distances under 1 m count as 1 m.
    inline double path_gain(double distance_m, double alpha, double ref_loss_db)
    {
        const double d = distance_m < 1.0 ? 1.0 : distance_m;
        return std::pow(10.0, -ref_loss_db / 10.0) * std::pow(d, -alpha);
    }

    struct LinkGains
    {
        double ap_user;
        double irs_user;
        double ap_irs;
    };

    inline LinkGains link_gains(const ScenarioConfig &cfg)
    {
        const auto dist = derived_distances(cfg);
        return {path_gain(dist.ap_user, cfg.alpha_au, cfg.ref_loss_db), path_gain(dist.irs_user, cfg.alpha_iu, cfg.ref_loss_db),
                path_gain(dist.ap_irs, cfg.alpha_ai, cfg.ref_loss_db)};
    }

    using Rng = std::mt19937_64;

    inline std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Independent generator for one trial.
    inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial)
    {
        const std::uint64_t a = splitmix64(seed);
        const std::uint64_t b = splitmix64(a ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
        std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b),
                          static_cast<std::uint32_t>(b >> 32)};
        return Rng(seq);
    }

    // One CN(0, variance) sample.
    inline complex sample_cscg(Rng &rng, double variance)
    {
        std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
        const double re = normal(rng);
        const double im = normal(rng);
        return {re, im};
    }

    inline CVector sample_cscg_vector(Rng &rng, Eigen::Index n, double variance)
    {
        CVector v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v(i) = sample_cscg(rng, variance);
        return v;
    }

    // Draw order is fixed (h_d, h_r, then G row by row) so realizations are reproducible.
    inline ChannelRealization sample_channels(const ScenarioConfig &cfg, Rng &rng)
    {
        cfg.validate();
        const auto gains = link_gains(cfg);
        CVector h_d = sample_cscg_vector(rng, cfg.M, gains.ap_user);
        if (cfg.suppress_direct_link)
            h_d.setZero();
        CVector h_r = sample_cscg_vector(rng, cfg.N, gains.irs_user);
        CMatrix G(cfg.N, cfg.M);
        for (Eigen::Index n = 0; n < cfg.N; ++n)
            for (Eigen::Index m = 0; m < cfg.M; ++m)
                G(n, m) = sample_cscg(rng, gains.ap_irs);
        return {std::move(h_d), std::move(h_r), std::move(G)};
    }

    inline ChannelRealization sample_channels(const ScenarioConfig &cfg, std::uint64_t trial)
    {
        Rng rng = trial_rng(cfg.seed, trial);
        return sample_channels(cfg, rng);
    }

    struct UnitVarianceChannels
    {
        CVector h_r;
        CVector g;
    };

    // Unit-variance IRS-user and AP-IRS channels for a single-antenna AP.
    inline UnitVarianceChannels sample_unit_variance_channels(Eigen::Index n, Rng &rng)
    {
        if (n < 1)
            throw invalid_input("need at least one reflecting element");
        CVector h_r = sample_cscg_vector(rng, n, 1.0);
        CVector g = sample_cscg_vector(rng, n, 1.0);
        return {std::move(h_r), std::move(g)};
    }
}
