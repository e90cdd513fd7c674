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

#include <catch2/catch_amalgamated.hpp>

#include "irsdp/experiments.hpp"
#include "irsdp/report.hpp"

#include <map>
#include <sstream>

using namespace irsdp;
using Catch::Approx;

namespace
{
    const SweepResult &point(const SweepOutput &out, const std::string &scheme, double x)
    {
        for (const auto &p : out.points)
            if (p.scheme == scheme && p.x == x)
                return p;
        FAIL("no point " << scheme << " at " << x);
        throw std::logic_error("unreachable");
    }
}

TEST_CASE("scheme names")
{
    for (Scheme s : all_schemes())
        CHECK(parse_scheme(scheme_name(s)) == s);
    CHECK_THROWS_AS(parse_scheme("sdr"), invalid_input);
    CHECK(scheme_label(Scheme::AoBits, PhaseResolution::bits(2)) == "ao-2bit");
    CHECK(scheme_label(Scheme::InitBits, PhaseResolution::bits(1)) == "init-1bit");
    CHECK(scheme_label(Scheme::NoIrs, PhaseResolution::bits(1)) == "no-irs");
}

TEST_CASE("sweep_distance - paired draws and scheme ordering")
{
    ScenarioConfig cfg;
    cfg.N = 10;
    cfg.trials = 30;
    cfg.seed = 5;
    const std::vector<double> ds{10.0, 30.0, 50.0};
    const auto out = sweep_distance(cfg, ds, all_schemes(), {2, {}});

    CHECK(out.warnings.empty());
    CHECK(out.points.size() == ds.size() * 5);
    CHECK(out.records.size() == ds.size() * 5 * 30);

    // all schemes at one (d, trial) see the same realization
    std::map<std::pair<double, int>, std::uint64_t> hash;
    for (const auto &r : out.records)
    {
        const auto key = std::make_pair(r.d_m, r.trial);
        if (auto it = hash.find(key); it != hash.end())
            CHECK(it->second == r.realization_hash);
        else
            hash[key] = r.realization_hash;
    }

    // per-trial ordering continuous <= ao <= init, exhaustive <= ao
    std::map<std::tuple<double, int, std::string>, double> power;
    for (const auto &r : out.records)
        power[{r.d_m, r.trial, r.scheme}] = r.power_watts;
    for (double d : ds)
        for (int t = 0; t < cfg.trials; ++t)
        {
            const double c = power[{d, t, "continuous-ao"}];
            const double ao = power[{d, t, "ao-1bit"}];
            const double init = power[{d, t, "init-1bit"}];
            const double ex = power[{d, t, "exhaustive-1bit"}];
            CHECK(c <= ao * (1.0 + 1e-10));
            CHECK(ao <= init * (1.0 + 1e-10));
            CHECK(ex <= ao * (1.0 + 1e-10));
        }

    // no-IRS power only depends on the AP-user link
    ScenarioConfig mirrored = cfg;
    mirrored.d0 = 80.0;
    const auto moved = sweep_distance(mirrored, {30.0}, {Scheme::NoIrs});
    CHECK(moved.points.front().mean_watts == Approx(point(out, "no-irs", 30.0).mean_watts).epsilon(1e-14));

    const auto &p = point(out, "ao-1bit", 50.0);
    CHECK(p.mean_dbm == Approx(watts_to_dbm(p.mean_watts)).epsilon(1e-14));
    double sum = 0.0;
    for (double w : p.powers_watts)
        sum += w;
    CHECK(p.mean_watts == Approx(sum / p.trials).epsilon(1e-14));
}

TEST_CASE("sweep_distance - IRS helps near the surface")
{
    ScenarioConfig cfg;
    cfg.trials = 200;
    const auto out = sweep_distance(cfg, {50.0}, {Scheme::AoBits, Scheme::NoIrs});
    CHECK(point(out, "ao-1bit", 50.0).mean_watts < point(out, "no-irs", 50.0).mean_watts);
}

TEST_CASE("sweep_distance - validation and skips")
{
    ScenarioConfig cfg;
    cfg.trials = 2;
    CHECK_THROWS_AS(sweep_distance(cfg, {0.0}, all_schemes()), invalid_input);
    CHECK_THROWS_AS(sweep_distance(cfg, {60.0}, all_schemes()), invalid_input);
    CHECK_THROWS_AS(sweep_distance(cfg, {}, all_schemes()), invalid_input);
    CHECK_THROWS_AS(sweep_distance(cfg, {10.0}, {}), invalid_input);

    cfg.N = 30;
    const auto out = sweep_distance(cfg, {10.0}, all_schemes());
    REQUIRE(out.warnings.size() == 1);
    CHECK(out.warnings.front().find("exhaustive") != std::string::npos);
    for (const auto &p : out.points)
        CHECK(p.scheme != "exhaustive-1bit");
}

TEST_CASE("sweep_distance - output independent of worker count")
{
    ScenarioConfig cfg;
    cfg.N = 8;
    cfg.trials = 12;
    cfg.seed = 77;
    std::ostringstream a, b;
    write_csv(a, sweep_distance(cfg, {20.0, 45.0}, all_schemes(), {1, {}}).records);
    write_csv(b, sweep_distance(cfg, {20.0, 45.0}, all_schemes(), {3, {}}).records);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind(std::string(csv_header) + "\n", 0) == 0);
}

TEST_CASE("sweep_elements - monotone in N and ordered in bits")
{
    ScenarioConfig cfg;
    cfg.trials = 60;
    cfg.seed = 3;
    const std::vector<int> ns{10, 40, 120};
    const auto out = sweep_elements(cfg, ns, {1, 2}, {2, {}});
    CHECK(out.points.size() == ns.size() * 5);

    for (const std::string scheme : {"continuous-ao", "ao-1bit", "ao-2bit", "init-1bit"})
        for (std::size_t i = 1; i < ns.size(); ++i)
            CHECK(point(out, scheme, ns[i]).mean_watts <= point(out, scheme, ns[i - 1]).mean_watts);

    std::map<std::pair<double, std::string>, double> gap;
    for (const auto &g : out.gaps)
        gap[{g.x, g.scheme}] = g.gap_of_means_db;
    for (int n : ns)
    {
        CHECK(gap.at({n, "ao-2bit"}) < gap.at({n, "ao-1bit"}));
        CHECK(gap.at({n, "ao-1bit"}) >= 0.0);
    }

    CHECK_THROWS_AS(sweep_elements(cfg, {20, 10}, {1}), invalid_input);
    CHECK_THROWS_AS(sweep_elements(cfg, {0, 10}, {1}), invalid_input);
    CHECK_THROWS_AS(sweep_elements(cfg, {10}, {0}), invalid_input);
}

TEST_CASE("sweep_elements - gap approaches eta under the scaling-law setting")
{
    ScenarioConfig cfg;
    cfg.suppress_direct_link = true;
    cfg.trials = 40;
    const auto out = sweep_elements(cfg, {512}, {1});
    for (const auto &r : out.records)
        CHECK(r.M == 1);
    for (const auto &g : out.gaps)
        if (g.scheme == "init-1bit")
            CHECK(std::abs(g.mean_of_gaps_db - 3.9224) < 0.5);
        else if (g.scheme == "ao-1bit")
            CHECK(std::abs(g.mean_of_gaps_db - 3.9224) < 0.5);
}

TEST_CASE("eta_table - rows")
{
    const auto rows = eta_table(3);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].b == "1");
    CHECK(std::abs(rows[0].eta - 0.4053) <= 5e-5);
    CHECK(std::abs(rows[0].eta_db - (-3.9224)) <= 1e-3);
    CHECK(std::abs(rows[2].eta - 0.9496) <= 5e-5);
    CHECK(rows[3].b == "cont");
    CHECK(rows[3].eta == 1.0);
    CHECK(rows[3].eta_db == 0.0);
    CHECK_THROWS_AS(eta_table(0), invalid_input);
}

TEST_CASE("report - CSV layout and JSON echo")
{
    ScenarioConfig cfg;
    cfg.N = 4;
    cfg.trials = 2;
    cfg.seed = 9;
    const auto out = sweep_distance(cfg, {25.0}, {Scheme::AoBits, Scheme::NoIrs});
    std::ostringstream csv;
    write_csv(csv, out.records);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "scheme,d_m,N,M,b,trial,power_watts,power_dbm,objective,iterations,converged,seed");
    int rows = 0;
    while (std::getline(lines, line))
    {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 11);
        CHECK(line.substr(line.size() - 2) == ",9");
    }
    CHECK(rows == 4);

    const auto j = sweep_to_json("sweep_distance", cfg, out);
    CHECK(j["config"]["seed"] == 9);
    CHECK(j["config"]["N"] == 4);
    CHECK(j["config"]["b"] == "1");
    CHECK(j["points"].size() == 2);
}
