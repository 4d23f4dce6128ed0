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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ristrack/codebook.hpp"
#include "ristrack/controlplane.hpp"
#include "ristrack/tracking.hpp"
#include "ristrack/vision.hpp"
#include "ristrack/wavefield.hpp"

namespace ristrack {

enum class CaseKind {
    near_field_feed,  // surface as the passive aperture of the base station
    far_field_relay,  // surface relays between a distant base station and the UE
};

enum class PolicyKind { vision, sweep, genie, fixed };

const char* case_name(CaseKind kind) noexcept;
const char* policy_name(PolicyKind kind) noexcept;
PolicyKind parse_policy(const std::string& name);

/// UE moving back and forth along an arc of constant radius and pitch.
struct ArcTrajectory {
    double radius = 2.2;                 // meters
    double theta = pi / 2;
    double phi_start = deg2rad(-40.0);
    double phi_end = deg2rad(40.0);
    double phi_initial = 0.0;
    bool initially_increasing = true;
    double angular_speed = deg2rad(28.0);  // rad/s

    void validate() const;
    Direction direction_at(double t) const;
    Position position_at(double t) const;
};

struct Scenario {
    CaseKind kind = CaseKind::near_field_feed;
    Codebook codebook;  // carries geometry and incident model
    ElementPattern element;
    PolicyKind policy = PolicyKind::vision;
    SweepConfig sweep;
    VisionConfig vision;
    StereoRig rig;
    DetectorOracle detector;
    ArcTrajectory trajectory;
    LinkBudget budget;
    std::optional<double> target_peak_snr_db;  // overrides budget.snr_calibration_db
    double bs_ris_distance = 3.0;              // meters, far-field relay only
    double tick_period = 0.01;
    std::int64_t duration_ticks = 2000;
    std::uint64_t seed = 1;
    double snr_jitter_db = 0.5;
    TimingModel timing;
    std::size_t flash_capacity = 1024;

    const RisGeometry& geometry() const noexcept { return codebook.geometry; }
    double ris_ue_distance() const noexcept { return trajectory.radius; }

    /// Throws ConfigError describing the first inconsistency.
    void validate() const;
};

/// Defaults for the two deployments: a feed horn three
/// wavelengths in front of the surface, or a base station 3 m away with the
/// direct path blocked. Both use a 1-degree codebook over +-40 degrees.
Scenario near_field_scenario();
Scenario far_field_scenario();

/// Path loss seen by the UE for this scenario, in dB.
double scenario_path_loss_db(const Scenario& s);

/// Calibration offset in effect: derived from target_peak_snr_db when set
/// (so the genie serving boresight reaches it), else the budget's own.
double scenario_calibration_db(const Scenario& s);

/// Ticks covered by a duration, rounded up.
std::int64_t ticks_for(double seconds, double tick_period) noexcept;

struct TraceSample {
    double time_ms = 0.0;
    double true_phi_deg = 0.0;
    std::optional<double> est_phi_deg;
    std::size_t codeword_index = 0;
    double snr_db = 0.0;
    bool overhead = false;
    double capacity_bps_hz = 0.0;
};

using Trace = std::vector<TraceSample>;

Trace run(const Scenario& scenario);

void write_trace_csv(std::ostream& out, const Trace& trace);

struct PolicySummary {
    PolicyKind policy = PolicyKind::vision;
    double snr_p5 = 0.0;
    double snr_p50 = 0.0;
    double snr_p95 = 0.0;
    double snr_mean = 0.0;
    double snr_min = 0.0;
    double overhead_fraction = 0.0;
    std::int64_t overhead_episodes = 0;
    double time_below_threshold_ms = 0.0;
    double below_genie_3db_fraction = 0.0;
    std::int64_t deep_dip_episodes = 0;  // runs of ticks >= 6 dB below genie
    double max_deficit_db = 0.0;
    double mean_capacity_bps_hz = 0.0;
};

struct ComparisonReport {
    std::uint64_t seed = 0;
    double threshold_db = 0.0;
    std::vector<PolicySummary> policies;
};

/// Runs every policy on the same scenario and seed. Deficits are measured
/// against a genie run of the same scenario. `threshold_db` defaults to the
/// calibrated peak minus 10 dB.
ComparisonReport compare(const Scenario& base, std::span<const PolicyKind> policies,
                         std::optional<double> threshold_db = std::nullopt);

PolicySummary summarize(PolicyKind policy, const Trace& trace, const Trace& genie, double threshold_db,
                        double tick_period);

struct SpeedResult {
    double speed_deg_s = 0.0;
    double lock_loss_fraction = 0.0;  // ticks >= 3 dB below genie
    bool lock_held = false;
};

struct BreakdownReport {
    PolicyKind policy = PolicyKind::vision;
    std::vector<SpeedResult> speeds;
    std::optional<double> last_held_deg_s;     // highest speed below the first loss
    std::optional<double> transition_deg_s;   // lowest speed losing lock
};

BreakdownReport breakdown_sweep(const Scenario& base, std::span<const double> speeds_deg_s,
                                double deficit_db = 3.0, double max_loss_fraction = 0.10);

std::string to_json(const ComparisonReport& report);
std::string to_json(const BreakdownReport& report);

}  // namespace ristrack
