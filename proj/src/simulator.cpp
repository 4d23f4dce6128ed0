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

#include "ristrack/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "json.hpp"
#include "ristrack/errors.hpp"
#include "ristrack/random.hpp"

namespace ristrack {

const char* case_name(CaseKind kind) noexcept {
    return kind == CaseKind::near_field_feed ? "near_field_feed" : "far_field_relay";
}

const char* policy_name(PolicyKind kind) noexcept {
    switch (kind) {
        case PolicyKind::vision: return "vision";
        case PolicyKind::sweep: return "sweep";
        case PolicyKind::genie: return "genie";
        case PolicyKind::fixed: return "static";
    }
    return "unknown";
}

PolicyKind parse_policy(const std::string& name) {
    if (name == "vision") return PolicyKind::vision;
    if (name == "sweep") return PolicyKind::sweep;
    if (name == "genie") return PolicyKind::genie;
    if (name == "static") return PolicyKind::fixed;
    throw ConfigError(fmt::format("unknown policy '{}' (expected vision, sweep, genie or static)", name));
}

void ArcTrajectory::validate() const {
    if (!(radius > 0.0)) throw ConfigError("trajectory: radius must be positive");
    if (!(phi_start < phi_end)) throw ConfigError("trajectory: phi_start must be below phi_end");
    if (phi_initial < phi_start || phi_initial > phi_end)
        throw ConfigError("trajectory: initial phi lies outside the arc");
    if (!(angular_speed > 0.0)) throw ConfigError("trajectory: angular speed must be positive");
    if (!(theta > 0.0 && theta < pi)) throw ConfigError("trajectory: theta must lie in (0, pi)");
}

Direction ArcTrajectory::direction_at(double t) const {
    // Unfold the bouncing motion onto a circle of circumference 2L.
    const double span = phi_end - phi_start;
    const double offset = phi_initial - phi_start;
    const double s0 = initially_increasing ? offset : 2.0 * span - offset;
    double s = std::fmod(s0 + angular_speed * t, 2.0 * span);
    if (s < 0.0) s += 2.0 * span;
    const double phi = s <= span ? phi_start + s : phi_start + 2.0 * span - s;
    return {theta, phi};
}

Position ArcTrajectory::position_at(double t) const {
    return position_from_direction(direction_at(t), radius);
}

void Scenario::validate() const {
    try {
        geometry().validate();
        budget.validate();
        sweep.validate();
        vision.validate();
        rig.validate();
        detector.validate();
        timing.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    trajectory.validate();
    if (codebook.entries.empty()) throw ConfigError("scenario: codebook is empty");
    if (!(tick_period > 0.0)) throw ConfigError("scenario: tick period must be positive");
    if (duration_ticks < 1) throw ConfigError("scenario: duration must be at least one tick");
    if (!(snr_jitter_db >= 0.0)) throw ConfigError("scenario: SNR jitter must be >= 0");
    if (kind == CaseKind::far_field_relay) {
        if (!(bs_ris_distance > 0.0)) throw ConfigError("scenario: far-field relay needs a positive bs_ris_distance");
        if (!std::holds_alternative<FarFieldPlane>(codebook.incident))
            throw ConfigError("scenario: far-field relay needs a far-field incident model");
    } else if (!std::holds_alternative<NearFieldFeed>(codebook.incident)) {
        throw ConfigError("scenario: near-field feed needs a near-field incident model");
    }
    if (codebook.size() > flash_capacity)
        throw ConfigError(fmt::format("scenario: {} codewords exceed flash capacity {}", codebook.size(), flash_capacity));
    const std::size_t payload = 2 + codebook.size() * BoardConfig{geometry().rows, geometry().cols, flash_capacity}.bytes_per_codeword();
    if (payload > max_payload) throw ConfigError("scenario: codebook too large for a single download frame");
    if (target_peak_snr_db && !std::isfinite(*target_peak_snr_db))
        throw ConfigError("scenario: target peak SNR must be finite");
}

namespace {

Scenario default_scenario(CaseKind kind, IncidentModel incident, double target) {
    Scenario s;
    s.kind = kind;
    const RisGeometry geom;
    s.codebook = generate_codebook(geom, incident, {pi / 2}, linear_grid(deg2rad(-40.0), deg2rad(40.0), deg2rad(1.0)));
    s.target_peak_snr_db = target;
    return s;
}

}  // namespace

Scenario near_field_scenario() {
    const RisGeometry geom;
    return default_scenario(CaseKind::near_field_feed, NearFieldFeed{3.0 * geom.wavelength()}, 35.0);
}

Scenario far_field_scenario() {
    return default_scenario(CaseKind::far_field_relay, FarFieldPlane{{pi / 2, deg2rad(-60.0)}}, 25.0);
}

double scenario_path_loss_db(const Scenario& s) {
    const double lambda = s.geometry().wavelength();
    double loss = fspl_db(lambda, s.ris_ue_distance());
    if (s.kind == CaseKind::far_field_relay) loss += fspl_db(lambda, s.bs_ris_distance);
    return loss;
}

namespace {

double reference_magnitude(const Scenario& s) { return static_cast<double>(s.geometry().elements()); }

double ris_gain_db(double magnitude, double reference) {
    // Floor keeps exact nulls finite in traces.
    return gain_db(std::max(magnitude, reference * 1e-9), reference);
}

}  // namespace

double scenario_calibration_db(const Scenario& s) {
    if (!s.target_peak_snr_db) return s.budget.snr_calibration_db;
    const CodebookResponse response(s.codebook, s.element);
    const std::vector<double> mags = response.magnitudes({pi / 2, 0.0});
    const double best = *std::max_element(mags.begin(), mags.end());
    LinkBudget raw = s.budget;
    raw.snr_calibration_db = 0.0;
    const double uncalibrated =
        received_snr_db(raw, ris_gain_db(best, reference_magnitude(s)), scenario_path_loss_db(s));
    return *s.target_peak_snr_db - uncalibrated;
}

std::int64_t ticks_for(double seconds, double tick_period) noexcept {
    if (!(seconds > 0.0)) return 0;
    return static_cast<std::int64_t>(std::ceil(seconds / tick_period - 1e-9));
}

Trace run(const Scenario& scenario) {
    scenario.validate();
    const Codebook& book = scenario.codebook;
    const RisGeometry& geom = scenario.geometry();
    const CodebookResponse response(book, scenario.element);

    LinkBudget budget = scenario.budget;
    budget.snr_calibration_db = scenario_calibration_db(scenario);
    const double path_loss = scenario_path_loss_db(scenario);
    const double reference = reference_magnitude(scenario);

    // The control board receives the whole codebook up front and is then
    // driven with index frames.
    BoardState board(BoardConfig{geom.rows, geom.cols, scenario.flash_capacity});
    {
        std::vector<BitVector> flash;
        flash.reserve(book.size());
        for (const Codeword& cw : book.entries) flash.emplace_back(cw.bits.values().begin(), cw.bits.values().end());
        apply_frame(board, decode_frame(encode_frame(make_download_frame(flash))), scenario.timing);
    }
    auto command = [&](std::size_t index) {
        const auto wire = encode_frame(make_index_frame(static_cast<std::uint16_t>(index)));
        return apply_frame(board, decode_frame(wire), scenario.timing);
    };

    const std::size_t boresight = static_policy_step(book);
    PolicyState state = scenario.policy == PolicyKind::sweep ? make_sweep_state(book) : make_tracking_state(boresight);

    std::size_t commanded = boresight;
    command(commanded);
    std::size_t served = commanded;
    std::optional<std::pair<std::size_t, std::int64_t>> pending_switch;

    const std::int64_t latency_ticks = ticks_for(scenario.vision.latency, scenario.tick_period);
    const std::int64_t refresh_ticks = std::max<std::int64_t>(1, ticks_for(scenario.vision.refresh_period, scenario.tick_period));

    Trace trace;
    trace.reserve(static_cast<std::size_t>(scenario.duration_ticks));
    std::optional<double> previous_snr;

    for (std::int64_t tick = 0; tick < scenario.duration_ticks; ++tick) {
        const double now = static_cast<double>(tick) * scenario.tick_period;
        const Direction truth = scenario.trajectory.direction_at(now);
        const std::vector<double> mags = response.magnitudes(truth);

        PolicyDecision decision;
        switch (scenario.policy) {
            case PolicyKind::vision: {
                std::optional<PendingEstimate> arrival;
                if (tick % refresh_ticks == 0) {
                    try {
                        const StereoObservation obs = project(scenario.rig, scenario.trajectory.position_at(now));
                        if (auto boxes = detect(scenario.detector, scenario.rig, obs, static_cast<std::uint64_t>(tick))) {
                            const StereoObservation seen{boxes->first.center, boxes->second.center};
                            const double z = depth(scenario.rig, disparity(seen, scenario.rig));
                            const DirectionEstimate est = estimate_direction(scenario.rig, boxes->first, boxes->second, z);
                            arrival = PendingEstimate{est.direction, tick + latency_ticks};
                        }
                    } catch (const DomainError&) {
                        // Out of view or no usable disparity: nothing detected.
                    }
                }
                decision = vision_policy_step(state, book, arrival, tick);
                break;
            }
            case PolicyKind::sweep:
                decision = sweep_policy_step(state, book, previous_snr, scenario.sweep);
                break;
            case PolicyKind::genie: {
                std::size_t best = 0;
                for (std::size_t i = 1; i < mags.size(); ++i)
                    if (mags[i] > mags[best]) best = i;
                decision = {best, false};
                break;
            }
            case PolicyKind::fixed:
                decision = {boresight, false};
                break;
        }

        if (decision.index != commanded) {
            commanded = decision.index;
            const double latency = command(commanded);
            const std::int64_t delay =
                latency > scenario.tick_period ? static_cast<std::int64_t>(std::floor(latency / scenario.tick_period)) : 0;
            if (delay == 0) {
                served = commanded;
                pending_switch.reset();
            } else {
                pending_switch = {commanded, tick + delay};
            }
        }
        if (pending_switch && pending_switch->second <= tick) {
            served = pending_switch->first;
            pending_switch.reset();
        }

        std::mt19937_64 rng = make_rng(scenario.seed, Stream::snr_jitter, static_cast<std::uint64_t>(tick));
        std::normal_distribution<double> jitter(0.0, 1.0);
        const double snr = received_snr_db(budget, ris_gain_db(mags[served], reference), path_loss) +
                           scenario.snr_jitter_db * jitter(rng);

        TraceSample sample;
        sample.time_ms = now * 1000.0;
        sample.true_phi_deg = rad2deg(truth.phi);
        if (scenario.policy == PolicyKind::vision && state.last_estimate) sample.est_phi_deg = rad2deg(state.last_estimate->phi);
        sample.codeword_index = served;
        sample.snr_db = snr;
        sample.overhead = decision.overhead;
        sample.capacity_bps_hz = decision.overhead ? 0.0 : capacity_bps_hz(snr, budget.subcarriers);
        trace.push_back(sample);
        previous_snr = snr;
    }
    return trace;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
    out << "time_ms,true_phi_deg,est_phi_deg,codeword_index,snr_db,overhead,capacity_bps_hz\n";
    for (const TraceSample& s : trace) {
        fmt::print(out, "{:.3f},{:.6f},", s.time_ms, s.true_phi_deg);
        if (s.est_phi_deg) fmt::print(out, "{:.6f}", *s.est_phi_deg);
        fmt::print(out, ",{},{:.6f},{},{:.6f}\n", s.codeword_index, s.snr_db, s.overhead ? 1 : 0, s.capacity_bps_hz);
    }
}

namespace {

double percentile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    const double pos = p / 100.0 * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::int64_t count_runs(const std::vector<bool>& flags) {
    std::int64_t runs = 0;
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i] && (i == 0 || !flags[i - 1])) ++runs;
    return runs;
}

double peak_snr_db(const Scenario& s) {
    if (s.target_peak_snr_db) return *s.target_peak_snr_db;
    const CodebookResponse response(s.codebook, s.element);
    const std::vector<double> mags = response.magnitudes({pi / 2, 0.0});
    return received_snr_db(s.budget, ris_gain_db(*std::max_element(mags.begin(), mags.end()), reference_magnitude(s)),
                           scenario_path_loss_db(s));
}

}  // namespace

PolicySummary summarize(PolicyKind policy, const Trace& trace, const Trace& genie, double threshold_db,
                        double tick_period) {
    if (trace.empty() || trace.size() != genie.size()) throw DomainError("summarize: trace lengths differ");
    PolicySummary out;
    out.policy = policy;

    std::vector<double> snr;
    std::vector<bool> overhead;
    std::vector<bool> deep;
    std::int64_t below_threshold = 0;
    std::int64_t below_genie = 0;
    double capacity = 0.0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const double deficit = genie[i].snr_db - trace[i].snr_db;
        snr.push_back(trace[i].snr_db);
        overhead.push_back(trace[i].overhead);
        deep.push_back(deficit >= 6.0);
        if (trace[i].snr_db < threshold_db) ++below_threshold;
        if (deficit >= 3.0) ++below_genie;
        out.max_deficit_db = std::max(out.max_deficit_db, deficit);
        capacity += trace[i].capacity_bps_hz;
    }
    const auto n = static_cast<double>(trace.size());
    out.snr_p5 = percentile(snr, 5.0);
    out.snr_p50 = percentile(snr, 50.0);
    out.snr_p95 = percentile(snr, 95.0);
    out.snr_min = *std::min_element(snr.begin(), snr.end());
    double sum = 0.0;
    for (double v : snr) sum += v;
    out.snr_mean = sum / n;
    out.overhead_fraction = static_cast<double>(std::count(overhead.begin(), overhead.end(), true)) / n;
    out.overhead_episodes = count_runs(overhead);
    out.time_below_threshold_ms = static_cast<double>(below_threshold) * tick_period * 1000.0;
    out.below_genie_3db_fraction = static_cast<double>(below_genie) / n;
    out.deep_dip_episodes = count_runs(deep);
    out.mean_capacity_bps_hz = capacity / n;
    return out;
}

ComparisonReport compare(const Scenario& base, std::span<const PolicyKind> policies,
                         std::optional<double> threshold_db) {
    if (policies.empty()) throw ConfigError("compare: no policies requested");
    Scenario genie_scenario = base;
    genie_scenario.policy = PolicyKind::genie;
    const Trace genie = run(genie_scenario);

    ComparisonReport report;
    report.seed = base.seed;
    report.threshold_db = threshold_db ? *threshold_db : peak_snr_db(base) - 10.0;
    for (PolicyKind policy : policies) {
        Scenario s = base;
        s.policy = policy;
        const Trace trace = policy == PolicyKind::genie ? genie : run(s);
        report.policies.push_back(summarize(policy, trace, genie, report.threshold_db, base.tick_period));
    }
    return report;
}

BreakdownReport breakdown_sweep(const Scenario& base, std::span<const double> speeds_deg_s, double deficit_db,
                                double max_loss_fraction) {
    if (speeds_deg_s.empty()) throw ConfigError("breakdown: no speeds requested");
    BreakdownReport report;
    report.policy = base.policy;
    for (double speed : speeds_deg_s) {
        if (!(speed > 0.0)) throw ConfigError("breakdown: speeds must be positive");
        Scenario s = base;
        s.trajectory.angular_speed = deg2rad(speed);
        const Trace trace = run(s);
        s.policy = PolicyKind::genie;
        const Trace genie = run(s);
        std::int64_t lost = 0;
        for (std::size_t i = 0; i < trace.size(); ++i)
            if (genie[i].snr_db - trace[i].snr_db >= deficit_db) ++lost;
        const double fraction = static_cast<double>(lost) / static_cast<double>(trace.size());
        report.speeds.push_back({speed, fraction, fraction < max_loss_fraction});
    }
    for (const SpeedResult& r : report.speeds)
        if (!r.lock_held && (!report.transition_deg_s || r.speed_deg_s < *report.transition_deg_s))
            report.transition_deg_s = r.speed_deg_s;
    for (const SpeedResult& r : report.speeds)
        if (r.lock_held && (!report.transition_deg_s || r.speed_deg_s < *report.transition_deg_s) &&
            (!report.last_held_deg_s || r.speed_deg_s > *report.last_held_deg_s))
            report.last_held_deg_s = r.speed_deg_s;
    return report;
}

std::string to_json(const ComparisonReport& report) {
    nlohmann::ordered_json j;
    j["seed"] = report.seed;
    j["threshold_db"] = report.threshold_db;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const PolicySummary& p : report.policies) {
        nlohmann::ordered_json e;
        e["policy"] = policy_name(p.policy);
        e["snr_p5_db"] = p.snr_p5;
        e["snr_p50_db"] = p.snr_p50;
        e["snr_p95_db"] = p.snr_p95;
        e["snr_mean_db"] = p.snr_mean;
        e["snr_min_db"] = p.snr_min;
        e["overhead_fraction"] = p.overhead_fraction;
        e["overhead_episodes"] = p.overhead_episodes;
        e["time_below_threshold_ms"] = p.time_below_threshold_ms;
        e["below_genie_3db_fraction"] = p.below_genie_3db_fraction;
        e["deep_dip_episodes"] = p.deep_dip_episodes;
        e["max_deficit_db"] = p.max_deficit_db;
        e["mean_capacity_bps_hz"] = p.mean_capacity_bps_hz;
        list.push_back(std::move(e));
    }
    j["policies"] = std::move(list);
    return j.dump(2) + "\n";
}

std::string to_json(const BreakdownReport& report) {
    nlohmann::ordered_json j;
    j["policy"] = policy_name(report.policy);
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const SpeedResult& r : report.speeds)
        list.push_back({{"speed_deg_s", r.speed_deg_s}, {"lock_loss_fraction", r.lock_loss_fraction}, {"lock_held", r.lock_held}});
    j["speeds"] = std::move(list);
    j["last_held_deg_s"] = report.last_held_deg_s ? nlohmann::ordered_json(*report.last_held_deg_s) : nlohmann::ordered_json();
    j["transition_deg_s"] = report.transition_deg_s ? nlohmann::ordered_json(*report.transition_deg_s) : nlohmann::ordered_json();
    return j.dump(2) + "\n";
}

}  // namespace ristrack
