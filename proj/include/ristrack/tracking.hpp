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

#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "ristrack/codebook.hpp"
#include "ristrack/geometry.hpp"

namespace ristrack {

struct SweepConfig {
    int dwell_ticks = 1;
    double trigger_drop_db = 6.0;
    int local_window = 5;  // entries on each side of the current one

    void validate() const;
};

struct VisionConfig {
    double latency = 0.085;         // seconds from capture to usable estimate
    double refresh_period = 0.085;  // seconds between captures

    void validate() const;
};

enum class TrackingMode { tracking, full_sweep, local_sweep };

/// Direction estimate waiting for the vision pipeline to finish.
struct PendingEstimate {
    Direction direction;
    std::int64_t ready_tick = 0;
};

struct PolicyState {
    std::size_t active_index = 0;
    double max_observed_snr_db = -std::numeric_limits<double>::infinity();
    TrackingMode mode = TrackingMode::tracking;

    // Sweep bookkeeping: the candidate list, the one being measured, how many
    // dwell ticks it has had, and the summed feedback per candidate.
    std::vector<std::size_t> candidates;
    std::size_t cursor = 0;
    int dwell_count = 0;
    std::vector<double> scores;
    std::size_t sweep_center = 0;
    bool awaiting_feedback = false;

    std::deque<PendingEstimate> pending;
    std::optional<Direction> last_estimate;
};

struct PolicyDecision {
    std::size_t index = 0;
    bool overhead = false;
};

/// Initial state holding `initial_index`. Sweep policies start in a full sweep.
PolicyState make_tracking_state(std::size_t initial_index);
PolicyState make_sweep_state(const Codebook& book);

/// Queues `arrival` (an estimate captured this tick) and switches to the
/// nearest entry of the most recent estimate whose ready tick has come.
/// Missed detections simply leave the current entry in place.
PolicyDecision vision_policy_step(PolicyState& state, const Codebook& book,
                                  std::optional<PendingEstimate> arrival, std::int64_t now);

/// One tick of the sweep baseline. `measured_snr_db` is the feedback for the
/// entry served on the previous tick (absent on the very first tick).
PolicyDecision sweep_policy_step(PolicyState& state, const Codebook& book,
                                 std::optional<double> measured_snr_db, const SweepConfig& cfg);

/// Entry with the largest |E| at the true direction, found by evaluation.
std::size_t genie_policy_step(const CodebookResponse& response, const Direction& truth);

/// Entry steering to (90 deg, 0 deg), or the closest one available.
std::size_t static_policy_step(const Codebook& book);

}  // namespace ristrack
