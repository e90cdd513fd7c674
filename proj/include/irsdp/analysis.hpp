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

// Received-power scaling with b-bit phase quantization.
//
// Setting: single-antenna AP, direct link ignored, h_r ~ CN(0, rho_h^2 I), g ~ CN(0, rho_g^2 I).
// Each element is aligned to the continuous optimum -(arg conj(h_r,n) + arg g_n) and then
// rounded to the nearest of K = 2^b levels. The rounding error is uniform on [-pi/K, pi/K), so
// E[e^{j err}] = (K/pi) sin(pi/K) and
//
//     P_r(b) = N rho_h^2 rho_g^2 + N (N-1) (pi^2/16) rho_h^2 rho_g^2 ((K/pi) sin(pi/K))^2.
//
// The ratio P_r(b) / P_r(inf) tends to eta(b) = ((K/pi) sin(pi/K))^2 as N grows.

#include "irsdp/chansim.hpp"
#include "irsdp/parallel.hpp"
#include "irsdp/solver.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <span>
#include <tuple>
#include <vector>

namespace irsdp
{
    // E[e^{j err}] for an error uniform on [-pi/K, pi/K); 1 for continuous phases.
    inline double quantization_factor(PhaseResolution res)
    {
        if (res.is_continuous())
            return 1.0;
        const double K = static_cast<double>(res.levels());
        return K / std::numbers::pi * std::sin(std::numbers::pi / K);
    }

    inline double eta(PhaseResolution res)
    {
        const double q = quantization_factor(res);
        return q * q;
    }

    inline double eta_db(PhaseResolution res) { return linear_to_db(eta(res)); }

    struct ScalingLawParams
    {
        PhaseResolution resolution = PhaseResolution::continuous();
        int N = 1;
        double rho_h2 = 1.0;
        double rho_g2 = 1.0;

        void validate() const
        {
            if (N < 1)
                throw invalid_input("scaling law needs N >= 1");
            if (!(rho_h2 > 0.0) || !(rho_g2 > 0.0))
                throw invalid_input("channel variances must be positive");
        }
    };

    inline double pr_closed_form(const ScalingLawParams &p)
    {
        p.validate();
        const double n = p.N;
        const double var = p.rho_h2 * p.rho_g2;
        return n * var + n * (n - 1.0) * (std::numbers::pi * std::numbers::pi / 16.0) * var * eta(p.resolution);
    }

    struct QuantizedReception
    {
        double power;             // |h_r^H Theta g|^2
        complex mean_error_phasor; // average of e^{j err_n} over the elements
    };

    // Aligns every element to the continuous optimum, quantizes, returns the received power.
    inline QuantizedReception quantized_reception(const CVector &h_r, const CVector &g, PhaseResolution res)
    {
        if (h_r.size() != g.size() || h_r.size() == 0)
            throw invalid_input("h_r and g must have the same non-zero length");
        complex sum{0.0, 0.0};
        complex err_sum{0.0, 0.0};
        for (Eigen::Index n = 0; n < h_r.size(); ++n)
        {
            const complex a = std::conj(h_r(n)); // element of the row h_r^H
            const double ideal = wrap_angle(-(std::arg(a) + std::arg(g(n))));
            const double applied = res.is_continuous() ? ideal : discrete_update(ideal, res.bit_count()) * res.step();
            sum += a * std::polar(1.0, applied) * g(n);
            err_sum += std::polar(1.0, angle_difference(applied, ideal));
        }
        return {std::norm(sum), err_sum / static_cast<double>(h_r.size())};
    }

    struct MonteCarloEstimate
    {
        double mean = 0.0;
        double std_error = 0.0;
        int trials = 0;
        complex error_phasor_mean{0.0, 0.0};
        double error_phasor_std_error = 0.0; // of the real part
    };

    namespace detail
    {
        inline std::pair<double, double> mean_and_se(std::span<const double> xs)
        {
            const double n = static_cast<double>(xs.size());
            double sum = 0.0;
            for (double x : xs)
                sum += x;
            const double mean = sum / n;
            if (xs.size() < 2)
                return {mean, 0.0};
            double ss = 0.0;
            for (double x : xs)
                ss += (x - mean) * (x - mean);
            return {mean, std::sqrt(ss / (n - 1.0) / n)};
        }
    }

    // Sample mean of the received power under the scaling-law assumptions. Trial t uses the
    // generator trial_rng(seed, t); results are reduced in trial order.
    inline MonteCarloEstimate pr_monte_carlo(const ScalingLawParams &p, int trials, std::uint64_t seed, int workers = 1)
    {
        p.validate();
        if (trials < 1)
            throw invalid_input("trials must be at least 1");

        std::vector<double> power(static_cast<std::size_t>(trials));
        std::vector<double> err_re(power.size());
        std::vector<double> err_im(power.size());
        const double sh = std::sqrt(p.rho_h2);
        const double sg = std::sqrt(p.rho_g2);

        parallel_for(power.size(), workers, [&](std::size_t t) {
            Rng rng = trial_rng(seed, t);
            const auto ch = sample_unit_variance_channels(p.N, rng);
            const auto r = quantized_reception(ch.h_r * sh, ch.g * sg, p.resolution);
            power[t] = r.power;
            err_re[t] = r.mean_error_phasor.real();
            err_im[t] = r.mean_error_phasor.imag();
        });

        MonteCarloEstimate est;
        est.trials = trials;
        std::tie(est.mean, est.std_error) = detail::mean_and_se(power);
        double re_se = 0.0;
        double re_mean = 0.0;
        std::tie(re_mean, re_se) = detail::mean_and_se(err_re);
        est.error_phasor_mean = {re_mean, detail::mean_and_se(err_im).first};
        est.error_phasor_std_error = re_se;
        return est;
    }

    // Least-squares slope of log(y) against log(x).
    inline double loglog_slope(std::span<const double> x, std::span<const double> y)
    {
        if (x.size() != y.size() || x.size() < 2)
            throw invalid_input("need at least two (x, y) points");
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            if (!(x[i] > 0.0) || !(y[i] > 0.0))
                throw invalid_input("log-log fit needs positive values");
            mx += std::log(x[i]);
            my += std::log(y[i]);
        }
        mx /= static_cast<double>(x.size());
        my /= static_cast<double>(x.size());
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            const double dx = std::log(x[i]) - mx;
            sxy += dx * (std::log(y[i]) - my);
            sxx += dx * dx;
        }
        if (!(sxx > 0.0))
            throw invalid_input("x values are all equal");
        return sxy / sxx;
    }

    inline double power_gain_slope_closed_form(PhaseResolution res, std::span<const int> n_list)
    {
        std::vector<double> x, y;
        for (int n : n_list)
        {
            x.push_back(n);
            y.push_back(pr_closed_form({res, n, 1.0, 1.0}));
        }
        return loglog_slope(x, y);
    }

    // Growth exponent of the Monte Carlo received power in N (2 means squared power gain).
    // Each N gets its own seed stream derived from (seed, N).
    inline double power_gain_slope(PhaseResolution res, std::span<const int> n_list, int trials, std::uint64_t seed, int workers = 1)
    {
        const std::set<int> distinct(n_list.begin(), n_list.end());
        if (distinct.size() < 3)
            throw invalid_input("power gain slope needs at least three distinct N values");
        if (*distinct.begin() < 1)
            throw invalid_input("N values must be positive");
        if (*distinct.rbegin() < 10 * *distinct.begin())
            throw invalid_input("N values must span at least one decade");

        std::vector<double> x, y;
        for (int n : n_list)
        {
            x.push_back(n);
            y.push_back(pr_monte_carlo({res, n, 1.0, 1.0}, trials, splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(n))), workers).mean);
        }
        return loglog_slope(x, y);
    }
}
