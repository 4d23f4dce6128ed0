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

#include "ristrack/tracking.hpp"

#include <algorithm>
#include <cmath>

#include "ristrack/errors.hpp"

namespace ristrack {

void SweepConfig::validate() const {
    if (dwell_ticks < 1) throw DomainError("sweep: dwell_ticks must be >= 1");
    if (!(trigger_drop_db > 0.0)) throw DomainError("sweep: trigger drop must be positive");
    if (local_window < 1) throw DomainError("sweep: local window must be >= 1");
}

void VisionConfig::validate() const {
    if (!(latency >= 0.0)) throw DomainError("vision: latency must be >= 0");
    if (!(refresh_period > 0.0)) throw DomainError("vision: refresh period must be positive");
}

std::size_t static_policy_step(const Codebook& book) {
    return nearest_codeword(book, Direction{pi / 2, 0.0}).index;
}

PolicyState make_tracking_state(std::size_t initial_index) {
    PolicyState state;
    state.active_index = initial_index;
    return state;
}

namespace {

void begin_sweep(PolicyState& state, TrackingMode mode, std::vector<std::size_t> candidates) {
    state.mode = mode;
    state.candidates = std::move(candidates);
    state.scores.assign(state.candidates.size(), 0.0);
    state.cursor = 0;
    state.dwell_count = 0;
    state.awaiting_feedback = false;
}

}  // namespace

PolicyState make_sweep_state(const Codebook& book) {
    PolicyState state = make_tracking_state(static_policy_step(book));
    std::vector<std::size_t> all(book.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    begin_sweep(state, TrackingMode::full_sweep, std::move(all));
    return state;
}

PolicyDecision vision_policy_step(PolicyState& state, const Codebook& book,
                                  std::optional<PendingEstimate> arrival, std::int64_t now) {
    if (arrival) state.pending.push_back(*arrival);

    std::optional<Direction> matured;
    while (!state.pending.empty() && state.pending.front().ready_tick <= now) {
        matured = state.pending.front().direction;
        state.pending.pop_front();
    }
    if (matured) {
        state.last_estimate = matured;
        state.active_index = nearest_codeword(book, *matured).index;
    }
    return {state.active_index, false};
}

PolicyDecision sweep_policy_step(PolicyState& state, const Codebook& book,
                                 std::optional<double> measured_snr_db, const SweepConfig& cfg) {
    if (book.entries.empty()) throw DomainError("sweep policy: empty codebook");

    if (state.mode == TrackingMode::tracking) {
        if (measured_snr_db) {
            if (*measured_snr_db < state.max_observed_snr_db - cfg.trigger_drop_db) {
                const auto last = static_cast<std::ptrdiff_t>(book.size()) - 1;
                const auto center = static_cast<std::ptrdiff_t>(state.active_index);
                const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, center - cfg.local_window);
                const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(last, center + cfg.local_window);
                std::vector<std::size_t> window;
                for (std::ptrdiff_t i = lo; i <= hi; ++i) window.push_back(static_cast<std::size_t>(i));
                state.sweep_center = state.active_index;
                begin_sweep(state, TrackingMode::local_sweep, std::move(window));
            } else {
                state.max_observed_snr_db = std::max(state.max_observed_snr_db, *measured_snr_db);
            }
        }
        if (state.mode == TrackingMode::tracking) return {state.active_index, false};
        // Fall through: the first local-sweep candidate goes out this tick.
        state.active_index = state.candidates[0];
        state.awaiting_feedback = true;
        return {state.active_index, true};
    }

    // Sweeping: the feedback belongs to the candidate served last tick.
    if (measured_snr_db && state.awaiting_feedback) {
        state.scores[state.cursor] += *measured_snr_db;
        if (++state.dwell_count == cfg.dwell_ticks) {
            state.dwell_count = 0;
            ++state.cursor;
        }
    }

    if (state.cursor == state.candidates.size()) {
        // Every candidate measured: lock the best (ties to the earlier one).
        std::size_t best = 0;
        for (std::size_t i = 1; i < state.scores.size(); ++i)
            if (state.scores[i] > state.scores[best]) best = i;
        state.active_index = state.candidates[best];
        state.mode = TrackingMode::tracking;
        state.candidates.clear();
        state.scores.clear();
        state.awaiting_feedback = false;
        return {state.active_index, false};
    }

    state.active_index = state.candidates[state.cursor];
    state.awaiting_feedback = true;
    return {state.active_index, true};
}

std::size_t genie_policy_step(const CodebookResponse& response, const Direction& truth) {
    return response.best(truth);
}

}  // namespace ristrack
