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

// CSV rows and JSON summaries for sweep output.
//
// CSV: UTF-8, comma separated, '.' decimal point, one header row
//   scheme,d_m,N,M,b,trial,power_watts,power_dbm,objective,iterations,converged,seed
// Floating point fields use the shortest representation that round-trips, so equal inputs
// always produce byte-identical files.

#include "irsdp/experiments.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace irsdp
{
    inline constexpr const char *csv_header = "scheme,d_m,N,M,b,trial,power_watts,power_dbm,objective,iterations,converged,seed";

    inline void write_csv(std::ostream &os, const std::vector<TrialRecord> &records)
    {
        os << csv_header << '\n';
        for (const auto &r : records)
            os << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.scheme, r.d_m, r.N, r.M, r.b, r.trial, r.power_watts, r.power_dbm,
                              r.objective, r.iterations, r.converged ? "true" : "false", r.seed);
    }

    inline nlohmann::ordered_json config_to_json(const ScenarioConfig &cfg)
    {
        nlohmann::ordered_json j;
        j["M"] = cfg.M;
        j["N"] = cfg.N;
        j["b"] = cfg.resolution.label();
        j["gamma_db"] = cfg.gamma_db;
        j["sigma2_dbm"] = cfg.sigma2_dbm;
        j["d0"] = cfg.d0;
        j["dv"] = cfg.dv;
        j["d"] = cfg.d;
        j["alpha_au"] = cfg.alpha_au;
        j["alpha_ai"] = cfg.alpha_ai;
        j["alpha_iu"] = cfg.alpha_iu;
        j["ref_loss_db"] = cfg.ref_loss_db;
        j["seed"] = cfg.seed;
        j["trials"] = cfg.trials;
        j["suppress_direct_link"] = cfg.suppress_direct_link;
        return j;
    }

    inline nlohmann::ordered_json sweep_to_json(const std::string &experiment, const ScenarioConfig &cfg, const SweepOutput &out,
                                                const nlohmann::ordered_json &extra = nlohmann::ordered_json::object())
    {
        nlohmann::ordered_json j;
        j["experiment"] = experiment;
        j["config"] = config_to_json(cfg);
        for (const auto &[key, value] : extra.items())
            j[key] = value;
        auto &points = j["points"] = nlohmann::ordered_json::array();
        for (const auto &p : out.points)
            points.push_back({{"scheme", p.scheme},
                              {"x", p.x},
                              {"d_m", p.d_m},
                              {"N", p.N},
                              {"b", p.b},
                              {"trials", p.trials},
                              {"mean_watts", p.mean_watts},
                              {"std_error_watts", p.std_error_watts},
                              {"mean_dbm", p.mean_dbm}});
        auto &gaps = j["gaps_db"] = nlohmann::ordered_json::array();
        for (const auto &g : out.gaps)
            gaps.push_back({{"x", g.x}, {"scheme", g.scheme}, {"gap_of_means_db", g.gap_of_means_db}, {"mean_of_gaps_db", g.mean_of_gaps_db}});
        j["warnings"] = out.warnings;
        return j;
    }
}
