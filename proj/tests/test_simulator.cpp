// SPDX-License-Identifier: Apache-2.0
//
// ristrack: vision-aided beam tracking toolkit for reconfigurable surfaces
// Copyright (C) 2026 The ristrack Authors
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

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ristrack/errors.hpp"
#include "ristrack/simulator.hpp"

using namespace ristrack;

namespace {

Scenario short_run(Scenario s, PolicyKind policy, std::int64_t ticks = 600) {
    s.policy = policy;
    s.duration_ticks = ticks;
    return s;
}

std::string csv_of(const Trace& trace) {
    std::ostringstream out;
    write_trace_csv(out, trace);
    return out.str();
}

}  // namespace

TEST_CASE("trajectory reflects at the arc ends with constant speed") {
    ArcTrajectory arc;
    const double dt = 0.01;
    const double step = arc.angular_speed * dt;
    CHECK(arc.direction_at(0).phi == doctest::Approx(0.0));
    double prev = arc.direction_at(0).phi;
    int reflections = 0;
    for (int i = 1; i < 3000; ++i) {
        const double cur = arc.direction_at(i * dt).phi;
        CHECK(cur >= arc.phi_start - 1e-12);
        CHECK(cur <= arc.phi_end + 1e-12);
        const double moved = std::abs(cur - prev);
        if (std::abs(moved - step) > 1e-9) {
            // Reflection inside this tick: the path to the end and back adds up.
            const double end = std::abs(cur - arc.phi_end) < std::abs(cur - arc.phi_start) ? arc.phi_end : arc.phi_start;
            CHECK(std::abs(end - prev) + std::abs(end - cur) == doctest::Approx(step).epsilon(1e-9));
            ++reflections;
        }
        prev = cur;
    }
    CHECK(reflections > 5);

    ArcTrajectory down = arc;
    down.initially_increasing = false;
    CHECK(down.direction_at(0.1).phi < 0.0);
}

TEST_CASE("trajectory validation") {
    ArcTrajectory arc;
    arc.phi_start = arc.phi_end;
    CHECK_THROWS_AS(arc.validate(), ConfigError);
    arc = ArcTrajectory{};
    arc.angular_speed = 0;
    CHECK_THROWS_AS(arc.validate(), ConfigError);
}

TEST_CASE("scenario validation happens before tick 0") {
    Scenario s = near_field_scenario();
    s.tick_period = 0;
    CHECK_THROWS_AS(run(s), ConfigError);
    s = far_field_scenario();
    s.codebook = near_field_scenario().codebook;
    CHECK_THROWS_AS(run(s), ConfigError);
    s = near_field_scenario();
    s.flash_capacity = 10;
    CHECK_THROWS_AS(run(s), ConfigError);
}

TEST_CASE("genie on a stationary boresight user holds the calibrated peak") {
    Scenario s = short_run(near_field_scenario(), PolicyKind::genie, 200);
    s.trajectory.angular_speed = 1e-12;
    s.snr_jitter_db = 0.0;
    const Trace trace = run(s);
    for (const TraceSample& t : trace) {
        CHECK(t.snr_db == doctest::Approx(35.0).epsilon(1e-9));
        CHECK_FALSE(t.overhead);
    }
}

TEST_CASE("identical seeds give identical traces") {
    for (PolicyKind p : {PolicyKind::vision, PolicyKind::sweep}) {
        Scenario s = short_run(far_field_scenario(), p);
        s.detector.pixel_noise_sigma = 1.5;
        s.detector.miss_probability = 0.1;
        CHECK(csv_of(run(s)) == csv_of(run(s)));
        Scenario other = s;
        other.seed = s.seed + 1;
        other.detector.seed = other.seed;
        CHECK(csv_of(run(other)) != csv_of(run(s)));
    }
}

TEST_CASE("overhead ticks carry no capacity") {
    const Trace trace = run(short_run(near_field_scenario(), PolicyKind::sweep, 1000));
    int overhead = 0;
    for (const TraceSample& t : trace) {
        if (t.overhead) {
            ++overhead;
            CHECK(t.capacity_bps_hz == 0.0);
        } else {
            CHECK(t.capacity_bps_hz > 0.0);
        }
    }
    CHECK(overhead >= 81);
}

TEST_CASE("noiseless genie dominates every policy at every tick") {
    for (Scenario base : {near_field_scenario(), far_field_scenario()}) {
        base.snr_jitter_db = 0.0;
        const Trace genie = run(short_run(base, PolicyKind::genie));
        for (PolicyKind p : {PolicyKind::vision, PolicyKind::sweep, PolicyKind::fixed}) {
            const Trace trace = run(short_run(base, p));
            REQUIRE(trace.size() == genie.size());
            for (std::size_t i = 0; i < trace.size(); ++i) REQUIRE(trace[i].snr_db <= genie[i].snr_db);
        }
    }
}

TEST_CASE("SNR never exceeds the calibrated peak plus five jitter sigmas") {
    for (Scenario base : {near_field_scenario(), far_field_scenario()}) {
        const double peak = *base.target_peak_snr_db;
        for (PolicyKind p : {PolicyKind::vision, PolicyKind::sweep, PolicyKind::genie}) {
            for (const TraceSample& t : run(short_run(base, p, 2000)))
                REQUIRE(t.snr_db <= peak + 5 * base.snr_jitter_db);
        }
    }
}

TEST_CASE("vision never spends overhead and sweep does") {
    const Scenario base = short_run(near_field_scenario(), PolicyKind::vision, 2000);
    const std::vector<PolicyKind> policies{PolicyKind::vision, PolicyKind::sweep};
    const ComparisonReport report = compare(base, policies);
    REQUIRE(report.policies.size() == 2);
    CHECK(report.policies[0].overhead_fraction == 0.0);
    CHECK(report.policies[1].overhead_fraction > 0.0);
    CHECK(report.policies[0].snr_p5 >= report.policies[1].snr_p5);
    CHECK(report.threshold_db == doctest::Approx(25.0));
}

TEST_CASE("summary statistics") {
    Trace genie(4);
    Trace trace(4);
    const double snr[] = {10, 20, 30, 40};
    for (std::size_t i = 0; i < 4; ++i) {
        genie[i].snr_db = 40;
        trace[i].snr_db = snr[i];
        trace[i].overhead = i < 2;
    }
    const PolicySummary s = summarize(PolicyKind::sweep, trace, genie, 25.0, 0.01);
    CHECK(s.snr_p50 == doctest::Approx(25.0));
    CHECK(s.snr_min == 10.0);
    CHECK(s.snr_mean == doctest::Approx(25.0));
    CHECK(s.overhead_fraction == 0.5);
    CHECK(s.overhead_episodes == 1);
    CHECK(s.time_below_threshold_ms == doctest::Approx(20.0));
    CHECK(s.below_genie_3db_fraction == 0.75);
    CHECK(s.deep_dip_episodes == 1);
    CHECK(s.max_deficit_db == 30.0);
}

TEST_CASE("trace CSV layout") {
    Trace trace(1);
    trace[0].time_ms = 10;
    trace[0].true_phi_deg = 1.5;
    trace[0].codeword_index = 41;
    trace[0].snr_db = 35.25;
    trace[0].capacity_bps_hz = 100;
    const std::string csv = csv_of(trace);
    CHECK(csv.rfind("time_ms,true_phi_deg,est_phi_deg,codeword_index,snr_db,overhead,capacity_bps_hz\n", 0) == 0);
    CHECK(csv.find(",41,") != std::string::npos);
}

TEST_CASE("policy names") {
    CHECK(parse_policy("vision") == PolicyKind::vision);
    CHECK(parse_policy("static") == PolicyKind::fixed);
    CHECK(std::string(policy_name(PolicyKind::fixed)) == "static");
    CHECK_THROWS_AS(parse_policy("oracle"), ConfigError);
}

TEST_CASE("ticks_for rounds up") {
    CHECK(ticks_for(0.085, 0.01) == 9);
    CHECK(ticks_for(0.08, 0.01) == 8);
    CHECK(ticks_for(0.0, 0.01) == 0);
}
