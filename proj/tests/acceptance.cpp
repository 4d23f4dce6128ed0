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

// Acceptance runner. `acceptance` runs every criterion; `acceptance N` runs
// criterion N only. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <fmt/format.h>

#include "ristrack/codebook.hpp"
#include "ristrack/controlplane.hpp"
#include "ristrack/errors.hpp"
#include "ristrack/simulator.hpp"
#include "ristrack/vision.hpp"
#include "ristrack/wavefield.hpp"

using namespace ristrack;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> deg_axis(double start, double stop, double step) {
    std::vector<double> out;
    for (double d : linear_grid(start, stop, step)) out.push_back(deg2rad(d));
    return out;
}

Outcome pattern_steering() {
    const auto start = Clock::now();
    const RisGeometry g;
    const Codebook book = generate_codebook(g, NearFieldFeed{3.0 * g.wavelength()}, {pi / 2}, deg_axis(-40, 40, 10));
    const std::vector<double> axis = deg_axis(-90, 90, 0.5);
    double worst = 0.0;
    std::string peaks;
    for (const Codeword& cw : book.entries) {
        const PatternCut cut = pattern_cut(g, element_states(g, cw), {}, pi / 2, axis);
        const double peak = rad2deg(main_lobe(cut).peak);
        worst = std::max(worst, std::abs(peak - rad2deg(cw.desired.phi)));
        peaks += fmt::format("{}{:.1f}", peaks.empty() ? "" : " ", peak);
    }
    const double elapsed = seconds_since(start);
    return {book.size() == 9 && worst <= 3.0 && elapsed < 10.0,
            fmt::format("9 cuts, peaks [{}] deg, worst offset {:.2f} deg (limit 3), {:.3f} s (limit 10)", peaks,
                        worst, elapsed)};
}

Outcome main_lobe_width() {
    const RisGeometry g;
    const Codeword cw = generate_codeword(g, NearFieldFeed{3.0 * g.wavelength()}, {pi / 2, 0});
    const PatternCut cut = pattern_cut(g, element_states(g, cw), {}, pi / 2, deg_axis(-90, 90, 0.05));
    const MainLobe lobe = main_lobe(cut);
    const double width = rad2deg(lobe.half_power_width);
    return {!lobe.censored && width > 10.0, fmt::format("boresight -3 dB width {:.3f} deg (must exceed 10)", width)};
}

Outcome quantization_optimality() {
    const auto start = Clock::now();
    RisGeometry g;
    g.rows = g.cols = 3;
    const IncidentModel feed = NearFieldFeed{3.0 * g.wavelength()};
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> theta(deg2rad(60), deg2rad(120));
    std::uniform_real_distribution<double> phi(deg2rad(-60), deg2rad(60));
    constexpr int directions = 20;
    int meeting = 0;
    double worst = 1.0;
    Direction worst_dir;
    for (int i = 0; i < directions; ++i) {
        const Direction d{theta(rng), phi(rng)};
        const double best =
            std::abs(scattering_field(g, element_states(g, exhaustive_best_codeword(g, feed, d)), {}, d));
        const double got = std::abs(scattering_field(g, element_states(g, generate_codeword(g, feed, d)), {}, d));
        const double ratio = got / best;
        if (ratio >= 0.90) ++meeting;
        if (ratio < worst) {
            worst = ratio;
            worst_dir = d;
        }
    }
    const double elapsed = seconds_since(start);
    return {meeting == directions && elapsed < 1.0,
            fmt::format("{}/{} directions reach 0.90 of the exhaustive optimum; minimum ratio {:.3f} at "
                        "(theta {:.1f}, phi {:.1f}) deg; {:.3f} s (limit 1)",
                        meeting, directions, worst, rad2deg(worst_dir.theta), rad2deg(worst_dir.phi), elapsed)};
}

Outcome vision_closed_loop() {
    const StereoRig rig;
    const DetectorOracle exact;
    int points = 0;
    double worst_angle = 0.0;
    double worst_depth = 0.0;
    // 10 depths x 10 lateral placements, each kept inside both images.
    for (int iz = 0; iz < 10; ++iz) {
        const double z = 0.5 + iz * (10.0 - 0.5) / 9.0;
        for (int k = 0; k < 10; ++k) {
            const double fx = -0.8 + 0.16 * k + 0.02;   // fraction of the horizontal half-view
            const double fy = 0.7 * std::sin(1.3 * k);  // fraction of the vertical half-view
            const double half_w = (rig.image_width / 2.0 - 5.0) / rig.focal_px * z - rig.baseline / 2.0;
            const double half_h = (rig.image_height / 2.0 - 5.0) / rig.focal_px * z;
            const Position p{fx * half_w, fy * half_h, z};
            const Direction truth = direction_from_position(p);
            const StereoObservation obs = project(rig, p);
            const auto pair = detect(exact, rig, obs, static_cast<std::uint64_t>(points));
            if (!pair) return {false, "zero-noise detector missed"};
            const StereoObservation seen{pair->first.center, pair->second.center};
            const double zhat = depth(rig, disparity(seen, rig));
            const DirectionEstimate est = estimate_direction(rig, pair->first, pair->second, zhat);
            worst_angle = std::max(worst_angle, rad2deg(angular_distance(est.direction, truth)));
            worst_depth = std::max(worst_depth, std::abs(zhat - z) / z);
            ++points;
        }
    }
    return {points == 100 && worst_angle <= 0.1 && worst_depth <= 1e-3,
            fmt::format("{} points, z 0.5-10 m; worst direction error {:.2e} deg (limit 0.1), worst depth error "
                        "{:.2e} (limit 1e-3)",
                        points, worst_angle, worst_depth)};
}

// Runs of consecutive ticks at least `deficit` dB below genie that contain
// overhead ticks.
int overhead_dips(const Trace& trace, const Trace& genie, double deficit, bool& zero_capacity) {
    int episodes = 0;
    bool in_run = false;
    bool run_has_overhead = false;
    zero_capacity = true;
    for (std::size_t i = 0; i <= trace.size(); ++i) {
        const bool deep = i < trace.size() && genie[i].snr_db - trace[i].snr_db >= deficit;
        if (deep) {
            in_run = true;
            if (trace[i].overhead) {
                run_has_overhead = true;
                if (trace[i].capacity_bps_hz != 0.0) zero_capacity = false;
            }
        } else if (in_run) {
            if (run_has_overhead) ++episodes;
            in_run = false;
            run_has_overhead = false;
        }
    }
    return episodes;
}

Outcome tracking_comparison() {
    std::string detail;
    bool pass = true;
    double slowest = 0.0;
    for (const Scenario& base0 : {near_field_scenario(), far_field_scenario()}) {
        Scenario base = base0;
        base.trajectory.angular_speed = deg2rad(28.0);
        base.detector.pixel_noise_sigma = 1.0;
        base.detector.miss_probability = 0.02;

        Scenario s = base;
        s.policy = PolicyKind::genie;
        const Trace genie = run(s);

        auto timed = [&](PolicyKind p) {
            Scenario r = base;
            r.policy = p;
            const auto start = Clock::now();
            Trace t = run(r);
            slowest = std::max(slowest, seconds_since(start));
            return t;
        };
        const Trace vision = timed(PolicyKind::vision);
        const Trace sweep = timed(PolicyKind::sweep);

        std::size_t vision_overhead = 0;
        std::size_t within = 0;
        for (std::size_t i = 0; i < vision.size(); ++i) {
            if (vision[i].overhead) ++vision_overhead;
            if (genie[i].snr_db - vision[i].snr_db < 3.0) ++within;
        }
        const double within_fraction = static_cast<double>(within) / static_cast<double>(vision.size());
        bool zero_capacity = true;
        const int dips = overhead_dips(sweep, genie, 6.0, zero_capacity);

        const bool case_one = base.kind == CaseKind::near_field_feed;
        const bool a = vision_overhead == 0 && within_fraction >= 0.95;
        const bool b = dips >= 1 && zero_capacity;
        // Vision accuracy is judged on the near-field case and sweep dips on
        // both; the far-field vision share is reported for reference.
        pass = pass && b && (!case_one || a);
        detail += fmt::format("{}{}: vision overhead {} ticks, within 3 dB of genie {:.1f}%{}; sweep {} deep "
                              "overhead episodes, zero capacity {}",
                              detail.empty() ? "" : " | ", case_name(base.kind), vision_overhead,
                              100.0 * within_fraction, case_one ? " (limit 95%)" : " (reference)", dips,
                              zero_capacity ? "yes" : "no");
    }
    pass = pass && slowest < 30.0;
    detail += fmt::format(" | slowest run {:.2f} s (limit 30)", slowest);
    return {pass, detail};
}

Outcome velocity_breakdown() {
    Scenario base = near_field_scenario();
    base.policy = PolicyKind::vision;
    base.detector.pixel_noise_sigma = 1.0;
    base.detector.miss_probability = 0.02;
    const std::vector<double> speeds{28, 60, 100, 118, 150, 200};
    const BreakdownReport report = breakdown_sweep(base, speeds, 3.0, 0.10);

    bool pass = true;
    std::string detail;
    for (const SpeedResult& r : report.speeds) {
        if (r.speed_deg_s >= 60 && r.speed_deg_s <= 100 && !r.lock_held) pass = false;
        if (r.speed_deg_s >= 150 && r.lock_held) pass = false;
        detail += fmt::format("{:.0f}:{:.3f}{} ", r.speed_deg_s, r.lock_loss_fraction, r.lock_held ? "" : "*");
    }
    const double lo = 118.0 * 0.75;
    const double hi = 118.0 * 1.25;
    const bool bracket = report.transition_deg_s && *report.transition_deg_s >= lo && *report.transition_deg_s <= hi;
    pass = pass && bracket;
    return {pass, fmt::format("loss fraction by speed (deg/s:fraction, * = lost) {}; transition {} (must lie in "
                              "[{:.1f}, {:.1f}])",
                              detail, report.transition_deg_s ? fmt::format("{:.0f} deg/s", *report.transition_deg_s)
                                                              : std::string("none"),
                              lo, hi)};
}

Outcome control_plane() {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> op(1, 3);
    std::uniform_int_distribution<int> len(0, 256);
    auto random_frame = [&] {
        ControlFrame f;
        f.opcode = static_cast<Opcode>(op(rng));
        f.payload.resize(static_cast<std::size_t>(len(rng)));
        for (auto& b : f.payload) b = static_cast<std::uint8_t>(rng());
        return f;
    };

    int round_trips = 0;
    for (int i = 0; i < 10000; ++i) {
        const ControlFrame f = random_frame();
        if (decode_frame(encode_frame(f)) == f) ++round_trips;
    }

    std::size_t corruptions = 0;
    std::size_t rejected = 0;
    for (int i = 0; i < 1000; ++i) {
        ControlFrame f = random_frame();
        f.payload.resize(f.payload.size() % 48);
        const std::vector<std::uint8_t> good = encode_frame(f);
        for (std::size_t pos = 0; pos < good.size(); ++pos) {
            for (int v = 0; v < 256; ++v) {
                if (v == good[pos]) continue;
                std::vector<std::uint8_t> bad = good;
                bad[pos] = static_cast<std::uint8_t>(v);
                ++corruptions;
                try {
                    (void)decode_frame(bad);
                } catch (const FrameError&) {
                    ++rejected;
                }
            }
        }
    }

    const TimingModel timing;
    const bool anchors = timing.refresh_settle == 85e-6 && timing.inter_chip_peak_bps() == 1.6e9;
    return {round_trips == 10000 && rejected == corruptions && anchors,
            fmt::format("{}/10000 round trips; {}/{} single-byte corruptions rejected; settle {:.1f} us; inter-chip "
                        "peak {:.3f} Gbps",
                        round_trips, rejected, corruptions, timing.refresh_settle * 1e6,
                        timing.inter_chip_peak_bps() / 1e9)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / fmt::format("ristrack_acceptance_{}", ::getpid());
    struct Job {
        std::string config;
        std::string command;
        std::string output;
    };
    const std::vector<Job> jobs{{"case1_vision.json", "simulate", "trace.csv"},
                                {"case2_sweep.json", "simulate", "trace.csv"},
                                {"case1_vision.json", "compare", "compare.json"},
                                {"case2_sweep.json", "compare", "compare.json"}};
    bool pass = true;
    std::string detail;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        std::string contents[2];
        for (int rep = 0; rep < 2; ++rep) {
            const fs::path out = root / fmt::format("{}_{}", j, rep);
            fs::create_directories(out);
            const std::string cmd =
                fmt::format("\"{}\" --config \"{}/{}\" --out \"{}\" --seed 42 {} > /dev/null", RISTRACK_CLI,
                            RISTRACK_CONFIG_DIR, jobs[j].config, out.string(), jobs[j].command);
            if (std::system(cmd.c_str()) != 0) return {false, fmt::format("command failed: {}", cmd)};
            contents[rep] = slurp(out / jobs[j].output);
        }
        const bool same = !contents[0].empty() && contents[0] == contents[1];
        pass = pass && same;
        detail += fmt::format("{}{} {}: {} bytes {}", detail.empty() ? "" : "; ", jobs[j].command, jobs[j].config,
                              contents[0].size(), same ? "identical" : "DIFFER");
    }
    fs::remove_all(root);
    return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"pattern steering", pattern_steering},
        {"main-lobe width", main_lobe_width},
        {"quantization optimality", quantization_optimality},
        {"vision closed loop", vision_closed_loop},
        {"tracking comparison", tracking_comparison},
        {"velocity breakdown", velocity_breakdown},
        {"control plane", control_plane},
        {"determinism", determinism},
    };

    std::vector<std::size_t> selected;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) {
            const int n = std::atoi(argv[i]);
            if (n < 1 || n > static_cast<int>(criteria.size())) {
                std::cerr << "usage: acceptance [criterion 1-" << criteria.size() << "]...\n";
                return 2;
            }
            selected.push_back(static_cast<std::size_t>(n - 1));
        }
    } else {
        for (std::size_t i = 0; i < criteria.size(); ++i) selected.push_back(i);
    }

    int failures = 0;
    for (std::size_t i : selected) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, fmt::format("exception: {}", e.what())};
        }
        if (!o.pass) ++failures;
        fmt::print("criterion {} ({}): {}: {}\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
