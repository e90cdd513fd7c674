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

// System model of a single-user MISO downlink assisted by an N-element reflecting surface.
//
// Channels are stored in column (non-conjugated) form:
//   h_d  (M)    AP -> user
//   h_r  (N)    IRS -> user
//   G    (N x M) AP -> IRS
// The user sees the row channel h^H = h_r^H diag(e^{j theta}) G + h_d^H. All functions below
// return the column form h, i.e. the conjugate transpose of that row.
//
// N = 0 is a valid surface size and means "no IRS".

#include "irsdp/error.hpp"
#include "irsdp/units.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace irsdp
{
    using complex = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;

    // Phase resolution of the reflecting elements: b bits (K = 2^b levels) or continuous.
    class PhaseResolution
    {
    public:
        static PhaseResolution continuous() { return PhaseResolution{}; }

        static PhaseResolution bits(int b)
        {
            if (b < 1 || b > 30)
                throw invalid_input("phase resolution must be between 1 and 30 bits, got " + std::to_string(b));
            PhaseResolution r;
            r.bits_ = b;
            return r;
        }

        bool is_continuous() const { return !bits_.has_value(); }
        bool is_discrete() const { return bits_.has_value(); }

        int bit_count() const
        {
            if (!bits_)
                throw invalid_input("continuous resolution has no bit count");
            return *bits_;
        }

        std::uint32_t levels() const { return std::uint32_t{1} << bit_count(); }
        double step() const { return two_pi / static_cast<double>(levels()); }

        // "1".."30" or "cont"
        std::string label() const { return bits_ ? std::to_string(*bits_) : std::string("cont"); }

        bool operator==(const PhaseResolution &) const = default;

    private:
        PhaseResolution() = default;
        std::optional<int> bits_;
    };

    class ChannelRealization
    {
    public:
        ChannelRealization(CVector h_d, CVector h_r, CMatrix G)
            : h_d_(std::move(h_d)), h_r_(std::move(h_r)), G_(std::move(G))
        {
            if (G_.rows() != h_r_.size() || G_.cols() != h_d_.size())
                throw invalid_input("channel dimensions inconsistent: h_d has " + std::to_string(h_d_.size()) +
                                    " entries, h_r has " + std::to_string(h_r_.size()) + ", G is " +
                                    std::to_string(G_.rows()) + "x" + std::to_string(G_.cols()));
            if (h_d_.size() == 0)
                throw invalid_input("AP needs at least one antenna");
            if (!h_d_.allFinite() || !h_r_.allFinite() || !G_.allFinite())
                throw invalid_input("channel realization contains non-finite entries");
        }

        const CVector &h_d() const { return h_d_; }
        const CVector &h_r() const { return h_r_; }
        const CMatrix &G() const { return G_; }

        Eigen::Index antennas() const { return h_d_.size(); }
        Eigen::Index elements() const { return h_r_.size(); }

        // Same direct link, reflecting surface removed.
        ChannelRealization without_irs() const { return {h_d_, CVector(0), CMatrix(0, h_d_.size())}; }

    private:
        CVector h_d_;
        CVector h_r_;
        CMatrix G_;
    };

    // Reflection phases of the N elements, unit amplitude. Continuous phases are kept in [0, 2*pi);
    // discrete phases are indices k into F = {0, dtheta, ..., (K-1) dtheta}.
    class PhaseShiftVector
    {
    public:
        static PhaseShiftVector continuous(std::vector<double> angles)
        {
            PhaseShiftVector p(PhaseResolution::continuous());
            for (double &a : angles)
            {
                if (!std::isfinite(a))
                    throw invalid_input("phase angle is not finite");
                a = wrap_angle(a);
            }
            p.angles_ = std::move(angles);
            return p;
        }

        static PhaseShiftVector zeros(std::size_t n) { return continuous(std::vector<double>(n, 0.0)); }

        static PhaseShiftVector discrete(int bits, std::vector<std::uint32_t> indices)
        {
            PhaseShiftVector p(PhaseResolution::bits(bits));
            const std::uint32_t K = p.resolution_.levels();
            for (std::uint32_t k : indices)
                if (k >= K)
                    throw invalid_input("phase index " + std::to_string(k) + " out of range for " + std::to_string(bits) + "-bit phases");
            p.indices_ = std::move(indices);
            return p;
        }

        const PhaseResolution &resolution() const { return resolution_; }
        bool is_discrete() const { return resolution_.is_discrete(); }

        std::size_t size() const { return is_discrete() ? indices_.size() : angles_.size(); }

        double angle(std::size_t n) const
        {
            if (is_discrete())
                return static_cast<double>(indices_[n]) * resolution_.step();
            return angles_[n];
        }

        complex phasor(std::size_t n) const { return std::polar(1.0, angle(n)); }

        // Discrete mode only.
        const std::vector<std::uint32_t> &indices() const
        {
            if (!is_discrete())
                throw invalid_input("continuous phase vector has no indices");
            return indices_;
        }

        std::vector<double> angles() const
        {
            std::vector<double> out(size());
            for (std::size_t n = 0; n < out.size(); ++n)
                out[n] = angle(n);
            return out;
        }

        // v_n = e^{j theta_n}
        CVector phasors() const
        {
            CVector v(static_cast<Eigen::Index>(size()));
            for (std::size_t n = 0; n < size(); ++n)
                v(static_cast<Eigen::Index>(n)) = phasor(n);
            return v;
        }

    private:
        explicit PhaseShiftVector(PhaseResolution r) : resolution_(r) {}

        PhaseResolution resolution_;
        std::vector<double> angles_;
        std::vector<std::uint32_t> indices_;
    };

    struct Beamformer
    {
        CVector w;

        double power() const { return w.squaredNorm(); }
    };

    // SNR target and receiver noise, both linear.
    class LinkBudget
    {
    public:
        LinkBudget(double gamma, double sigma2) : gamma_(gamma), sigma2_(sigma2)
        {
            if (!(gamma > 0.0) || !std::isfinite(gamma))
                throw invalid_input("SNR target must be positive and finite");
            if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
                throw invalid_input("noise power must be positive and finite");
        }

        static LinkBudget from_db(double gamma_db, double sigma2_dbm) { return {db_to_linear(gamma_db), dbm_to_watts(sigma2_dbm)}; }

        double gamma() const { return gamma_; }
        double sigma2() const { return sigma2_; }

    private:
        double gamma_;
        double sigma2_;
    };

    // Column form of h_r^H diag(e^{j theta}) G + h_d^H.
    inline CVector combined_channel(const ChannelRealization &ch, const PhaseShiftVector &theta)
    {
        if (theta.size() != static_cast<std::size_t>(ch.elements()))
            throw invalid_input("phase vector has " + std::to_string(theta.size()) + " entries but the surface has " +
                                std::to_string(ch.elements()));
        // h = G^H diag(e^{-j theta}) h_r + h_d
        CVector weighted = ch.h_r().cwiseProduct(theta.phasors().conjugate());
        return ch.G().adjoint() * weighted + ch.h_d();
    }

    inline double receive_snr(const ChannelRealization &ch, const PhaseShiftVector &theta, const Beamformer &w, double sigma2)
    {
        if (!(sigma2 > 0.0))
            throw invalid_input("noise power must be positive");
        const CVector h = combined_channel(ch, theta);
        if (w.w.size() != h.size())
            throw invalid_input("beamformer length does not match the number of AP antennas");
        return std::norm(h.dot(w.w)) / sigma2;
    }

    // Maximum-ratio transmission at power p.
    inline Beamformer mrt_beamformer(const CVector &combined, double p)
    {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw invalid_input("transmit power must be non-negative and finite");
        const double norm = combined.norm();
        if (!(norm > 0.0))
            throw degenerate_channel("combined channel is zero; MRT direction undefined");
        return Beamformer{combined * (std::sqrt(p) / norm)};
    }

    // Smallest transmit power meeting the SNR target with MRT: gamma sigma^2 / ||h||^2.
    inline double required_power(const CVector &combined, const LinkBudget &budget)
    {
        const double gain = combined.squaredNorm();
        if (!(gain > 0.0))
            throw infeasible_link("combined channel gain is zero; SNR target needs infinite power");
        return budget.gamma() * budget.sigma2() / gain;
    }
}
