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

// Logarithmic unit conversions. Everything inside the library is linear (watts, power ratios);
// these are only used where values enter or leave through configs and reports.

#include <cmath>
#include <numbers>

namespace irsdp
{
    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

    inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
    inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1000.0); }

    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    // Maps any finite angle into [0, 2*pi).
    inline double wrap_angle(double angle)
    {
        double r = std::fmod(angle, two_pi);
        if (r < 0.0)
            r += two_pi;
        // fmod of a tiny negative number can round up to exactly 2*pi
        if (r >= two_pi)
            r = 0.0;
        return r;
    }

    // Shortest signed angular difference a - b, in [-pi, pi).
    inline double angle_difference(double a, double b)
    {
        double d = wrap_angle(a - b);
        return d >= std::numbers::pi ? d - two_pi : d;
    }

    inline double circular_distance(double a, double b) { return std::abs(angle_difference(a, b)); }
}
