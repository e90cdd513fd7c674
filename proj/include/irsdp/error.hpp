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

#include <stdexcept>
#include <string>

namespace irsdp
{
    // Caller supplied something outside the documented domain (bad sizes, bad bits, bad flags).
    class invalid_input : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Numerical failures. The CLI maps these to exit code 2.
    class numeric_failure : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Combined channel is identically zero, so no beam direction exists.
    class degenerate_channel : public numeric_failure
    {
    public:
        using numeric_failure::numeric_failure;
    };

    // Zero channel gain: the SNR target needs infinite transmit power.
    class infeasible_link : public numeric_failure
    {
    public:
        using numeric_failure::numeric_failure;
    };

    // Exhaustive enumeration refused because K^N is too large.
    class too_large_instance : public invalid_input
    {
    public:
        using invalid_input::invalid_input;
    };
}
