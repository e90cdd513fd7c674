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

// Joint AP beamforming / IRS phase optimization.
//
// For fixed phases MRT is optimal and the required power is gamma sigma^2 / ||h||^2, so the
// whole problem reduces to maximizing the channel gain
//
//     f(v) = ||v^T Phi + h_d^H||^2 = v^T A conj(v) + 2 Re{v^T hd_hat} + ||h_d||^2,
//
// with v_n = e^{j theta_n}, Phi = diag(h_r^H) G, A = Phi Phi^H and hd_hat = Phi h_d.
// Holding every phase except theta_n fixed, f is affine in e^{j theta_n}:
//
//     f = 2 Re{e^{j theta_n} zeta_n} + const,   zeta_n = sum_{k != n} A_nk e^{-j theta_k} + hd_hat_n,
//
// so the best theta_n is the level of F closest (on the circle) to phi_n = -arg(zeta_n).
// Sweeping n = 1..N repeatedly never decreases f and stops at a coordinate-wise fixed point.

#include "irsdp/model.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

namespace irsdp
{
    class SolverWorkspace
    {
    public:
        explicit SolverWorkspace(const ChannelRealization &ch)
            : Phi(ch.h_r().conjugate().asDiagonal() * ch.G()), A(Phi * Phi.adjoint()), hd_hat(Phi * ch.h_d()),
              hd_norm2(ch.h_d().squaredNorm()), h_d(ch.h_d())
        {
        }

        CMatrix Phi;   // N x M
        CMatrix A;     // N x N, Hermitian PSD
        CVector hd_hat;
        double hd_norm2;
        CVector h_d;

        Eigen::Index elements() const { return Phi.rows(); }
        Eigen::Index antennas() const { return Phi.cols(); }

        // f(v) through the quadratic form.
        double objective(const CVector &v) const
        {
            const complex quad = (v.transpose() * A * v.conjugate()).value();
            const complex lin = v.cwiseProduct(hd_hat).sum();
            return quad.real() + 2.0 * lin.real() + hd_norm2;
        }

        // Column-form combined channel h = Phi^H conj(v) + h_d.
        CVector combined(const CVector &v) const { return Phi.adjoint() * v.conjugate() + h_d; }
    };

    inline SolverWorkspace build_workspace(const ChannelRealization &ch) { return SolverWorkspace(ch); }

    struct Zeta
    {
        complex value;
        double phase; // phi_n in [0, 2 pi), value = |value| e^{-j phi_n}
    };

    namespace detail
    {
        // zeta_n given conj(v); A is Hermitian so row n of A is the conjugate of column n.
        inline complex zeta_raw(const SolverWorkspace &ws, const CVector &conj_v, Eigen::Index n)
        {
            return ws.A.col(n).dot(conj_v) - ws.A(n, n) * conj_v(n) + ws.hd_hat(n);
        }

        inline double zeta_phase(complex z) { return wrap_angle(-std::arg(z)); }
    }

    // n is zero-based.
    inline Zeta zeta(const SolverWorkspace &ws, const PhaseShiftVector &theta, Eigen::Index n)
    {
        if (theta.size() != static_cast<std::size_t>(ws.elements()))
            throw invalid_input("phase vector length does not match the workspace");
        if (n < 0 || n >= ws.elements())
            throw invalid_input("element index out of range");
        const complex z = detail::zeta_raw(ws, theta.phasors().conjugate(), n);
        return {z, detail::zeta_phase(z)};
    }

    // Level of F = {0, 2pi/K, ..., 2pi(K-1)/K} nearest to phi in circular distance.
    // An exact midpoint goes to the smaller index.
    inline std::uint32_t discrete_update(double phi, int bits)
    {
        const PhaseResolution res = PhaseResolution::bits(bits);
        const std::uint32_t K = res.levels();
        const double step = res.step();
        const double x = wrap_angle(phi) / step;
        auto lo = static_cast<std::uint32_t>(std::floor(x));
        if (lo >= K)
            lo = K - 1;
        const std::uint32_t hi = (lo + 1) % K;
        const double d_lo = circular_distance(phi, lo * step);
        const double d_hi = circular_distance(phi, hi * step);
        if (d_lo < d_hi)
            return lo;
        if (d_hi < d_lo)
            return hi;
        return std::min(lo, hi);
    }

    inline PhaseShiftVector quantize_phases(const PhaseShiftVector &theta, int bits)
    {
        std::vector<std::uint32_t> idx(theta.size());
        for (std::size_t n = 0; n < idx.size(); ++n)
            idx[n] = discrete_update(theta.angle(n), bits);
        return PhaseShiftVector::discrete(bits, std::move(idx));
    }

    struct SolveResult
    {
        PhaseShiftVector theta = PhaseShiftVector::zeros(0);
        Beamformer w;
        double power_watts = 0.0;
        double objective = 0.0; // ||h||^2 of the combined channel
        int iterations = 0;     // full sweeps
        bool converged = false;
        std::vector<double> objective_trace; // initial value, then one entry per element update
    };

    struct SolveOptions
    {
        int max_sweeps = 100;
        double continuous_tolerance = 1e-8; // rad, largest per-element change in a sweep
    };

    // MRT and minimum power for a fixed phase vector.
    inline SolveResult evaluate_phases(const SolverWorkspace &ws, const PhaseShiftVector &theta, const LinkBudget &budget)
    {
        if (theta.size() != static_cast<std::size_t>(ws.elements()))
            throw invalid_input("phase vector length does not match the workspace");
        SolveResult r;
        r.theta = theta;
        const CVector h = ws.combined(theta.phasors());
        r.objective = h.squaredNorm();
        r.power_watts = required_power(h, budget);
        r.w = mrt_beamformer(h, r.power_watts);
        r.converged = true;
        r.objective_trace = {ws.objective(theta.phasors())};
        return r;
    }

    namespace detail
    {
        inline SolveResult finish(const SolverWorkspace &ws, PhaseShiftVector theta, const LinkBudget &budget, int sweeps, bool converged,
                                  std::vector<double> trace)
        {
            SolveResult r = evaluate_phases(ws, theta, budget);
            r.iterations = sweeps;
            r.converged = converged;
            r.objective_trace = std::move(trace);
            return r;
        }
    }

    // Element-wise discrete AO from a given discrete start.
    //
    // An element only moves when its new level strictly raises Re{e^{j theta} zeta_n}; with that
    // rule and a finite state space the sweep loop always terminates.
    inline SolveResult ao_discrete(const SolverWorkspace &ws, const PhaseShiftVector &theta_init, int max_sweeps, const LinkBudget &budget)
    {
        if (max_sweeps < 1)
            throw invalid_input("max_sweeps must be at least 1");
        if (!theta_init.is_discrete())
            throw invalid_input("discrete AO needs a discrete starting point");
        if (theta_init.size() != static_cast<std::size_t>(ws.elements()))
            throw invalid_input("phase vector length does not match the workspace");

        const int bits = theta_init.resolution().bit_count();
        const std::uint32_t K = theta_init.resolution().levels();
        std::vector<complex> level(K);
        for (std::uint32_t k = 0; k < K; ++k)
            level[k] = std::polar(1.0, k * theta_init.resolution().step());

        std::vector<std::uint32_t> idx = theta_init.indices();
        const Eigen::Index N = ws.elements();
        CVector conj_v(N);
        for (Eigen::Index n = 0; n < N; ++n)
            conj_v(n) = std::conj(level[idx[n]]);

        double f = ws.objective(conj_v.conjugate());
        std::vector<double> trace{f};
        trace.reserve(1 + static_cast<std::size_t>(N));

        int sweeps = 0;
        bool converged = false;
        while (sweeps < max_sweeps)
        {
            ++sweeps;
            bool changed = false;
            for (Eigen::Index n = 0; n < N; ++n)
            {
                const complex z = detail::zeta_raw(ws, conj_v, n);
                if (z != complex{0.0, 0.0})
                {
                    const std::uint32_t k_new = discrete_update(detail::zeta_phase(z), bits);
                    const std::uint32_t k_old = idx[n];
                    if (k_new != k_old)
                    {
                        const double gain = 2.0 * ((level[k_new] - level[k_old]) * z).real();
                        if (gain > 0.0)
                        {
                            idx[n] = k_new;
                            conj_v(n) = std::conj(level[k_new]);
                            f += gain;
                            changed = true;
                        }
                    }
                }
                trace.push_back(f);
            }
            if (!changed)
            {
                converged = true;
                break;
            }
        }
        return detail::finish(ws, PhaseShiftVector::discrete(bits, std::move(idx)), budget, sweeps, converged, std::move(trace));
    }

    // Same sweep with the unquantized update theta_n <- phi_n. Continuous benchmark.
    inline SolveResult continuous_phase_solution(const SolverWorkspace &ws, const PhaseShiftVector &theta_init, const LinkBudget &budget,
                                                 const SolveOptions &opts = {})
    {
        if (opts.max_sweeps < 1)
            throw invalid_input("max_sweeps must be at least 1");
        if (theta_init.is_discrete())
            throw invalid_input("continuous AO needs a continuous starting point");
        if (theta_init.size() != static_cast<std::size_t>(ws.elements()))
            throw invalid_input("phase vector length does not match the workspace");

        std::vector<double> angle = theta_init.angles();
        const Eigen::Index N = ws.elements();
        CVector conj_v = theta_init.phasors().conjugate();

        double f = ws.objective(conj_v.conjugate());
        std::vector<double> trace{f};

        int sweeps = 0;
        bool converged = false;
        while (sweeps < opts.max_sweeps)
        {
            ++sweeps;
            double largest_move = 0.0;
            for (Eigen::Index n = 0; n < N; ++n)
            {
                const complex z = detail::zeta_raw(ws, conj_v, n);
                if (z != complex{0.0, 0.0})
                {
                    const double phi = detail::zeta_phase(z);
                    const double move = circular_distance(phi, angle[n]);
                    const double gain = 2.0 * (std::abs(z) - (std::conj(conj_v(n)) * z).real());
                    if (move > 0.0 && gain >= 0.0)
                    {
                        angle[n] = phi;
                        conj_v(n) = std::polar(1.0, -phi);
                        f += gain;
                        largest_move = std::max(largest_move, move);
                    }
                }
                trace.push_back(f);
            }
            if (largest_move < opts.continuous_tolerance)
            {
                converged = true;
                break;
            }
        }
        return detail::finish(ws, PhaseShiftVector::continuous(std::move(angle)), budget, sweeps, converged, std::move(trace));
    }

    inline constexpr int exhaustive_limit_bits = 24;

    // Global maximizer over all K^N discrete phase vectors, enumerated in lexicographic order.
    // Candidates within 1e-10 relative of the incumbent count as ties and the earlier
    // (lexicographically smaller) vector is kept.
    inline SolveResult exhaustive_search(const SolverWorkspace &ws, int bits, const LinkBudget &budget)
    {
        const PhaseResolution res = PhaseResolution::bits(bits);
        const Eigen::Index N = ws.elements();
        if (static_cast<long long>(bits) * N > exhaustive_limit_bits)
            throw too_large_instance("exhaustive search over " + std::to_string(bits * N) + " bits of phase state refused (limit " +
                                     std::to_string(exhaustive_limit_bits) + ")");

        const std::uint32_t K = res.levels();
        std::vector<complex> level(K);
        for (std::uint32_t k = 0; k < K; ++k)
            level[k] = std::polar(1.0, k * res.step());

        std::vector<std::uint32_t> idx(static_cast<std::size_t>(N), 0);
        CVector v = CVector::Ones(N);
        CVector u = ws.A * v.conjugate(); // A conj(v), updated one column at a time

        auto value = [&] { return (v.cwiseProduct(u).sum() + 2.0 * v.cwiseProduct(ws.hd_hat).sum()).real() + ws.hd_norm2; };

        std::vector<std::uint32_t> best = idx;
        double best_f = value();
        std::vector<double> trace{best_f};
        constexpr std::uint64_t refresh_every = 4096;
        std::uint64_t step = 0;

        while (true)
        {
            // odometer increment, last element fastest
            Eigen::Index pos = N - 1;
            while (pos >= 0)
            {
                const std::uint32_t old = idx[pos];
                const std::uint32_t next = (old + 1) % K;
                idx[pos] = next;
                v(pos) = level[next];
                u += ws.A.col(pos) * std::conj(level[next] - level[old]);
                if (next != 0)
                    break;
                --pos;
            }
            if (pos < 0)
                break;
            if (++step % refresh_every == 0)
                u = ws.A * v.conjugate();

            const double f = value();
            if (f > best_f + 1e-10 * std::abs(best_f))
            {
                best_f = f;
                best = idx;
                trace.push_back(f);
            }
        }
        return detail::finish(ws, PhaseShiftVector::discrete(bits, std::move(best)), budget, 1, true, std::move(trace));
    }

    struct PipelineResult
    {
        SolveResult continuous;                    // continuous AO from all-zero phases
        std::optional<SolveResult> initialization; // quantized continuous phases, no AO
        SolveResult final_result;                  // discrete AO (or the continuous result)
    };

    // Continuous AO from zero phases, then quantize to b bits, then discrete AO.
    inline PipelineResult solve_p1_stages(const ChannelRealization &ch, PhaseResolution resolution, const LinkBudget &budget,
                                          const SolveOptions &opts = {})
    {
        const SolverWorkspace ws(ch);
        PipelineResult out{continuous_phase_solution(ws, PhaseShiftVector::zeros(static_cast<std::size_t>(ch.elements())), budget, opts),
                           std::nullopt, SolveResult{}};
        if (resolution.is_continuous())
        {
            out.final_result = out.continuous;
            return out;
        }
        const PhaseShiftVector start = quantize_phases(out.continuous.theta, resolution.bit_count());
        out.initialization = evaluate_phases(ws, start, budget);
        out.final_result = ao_discrete(ws, start, opts.max_sweeps, budget);
        return out;
    }

    inline SolveResult solve_p1(const ChannelRealization &ch, PhaseResolution resolution, const LinkBudget &budget, const SolveOptions &opts = {})
    {
        return solve_p1_stages(ch, resolution, budget, opts).final_result;
    }
}
