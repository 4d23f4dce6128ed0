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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "ristrack/codebook_io.hpp"
#include "ristrack/controlplane.hpp"
#include "ristrack/errors.hpp"
#include "ristrack/scenario_io.hpp"
#include "ristrack/simulator.hpp"

namespace fs = std::filesystem;
using namespace ristrack;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_runtime = 2;

struct Globals {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
};

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path require_config(const Globals& g) {
    if (g.config.empty()) throw ConfigError("--config is required for this command");
    return g.config;
}

fs::path output_path(const Globals& g, const fs::path& name) {
    const fs::path dir(g.out);
    fs::create_directories(dir);
    return name.is_absolute() ? name : dir / name;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
    out << text;
    if (!out) throw ConfigError(fmt::format("write to '{}' failed", path.string()));
}

ScenarioFile load_with_overrides(const Globals& g) {
    ScenarioFile file = load_scenario(require_config(g));
    if (g.seed) {
        file.scenario.seed = *g.seed;
        file.scenario.detector.seed = *g.seed;
    }
    return file;
}

std::string describe(const Codebook& book) {
    const RisGeometry& geom = book.geometry;
    const std::string incident = std::visit(
        [&](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NearFieldFeed>)
                return fmt::format("near-field feed at {:.4f} m ({:.2f} wavelengths)", m.feed_distance,
                                   m.feed_distance / geom.wavelength());
            else
                return fmt::format("far-field plane wave from theta {:.2f} deg, phi {:.2f} deg",
                                   rad2deg(m.tx.theta), rad2deg(m.tx.phi));
        },
        book.incident);
    return fmt::format("{} entries, {}x{} elements, d/lambda {}, {:.4g} GHz, {}", book.size(), geom.rows,
                       geom.cols, geom.spacing_over_lambda, geom.frequency_hz / 1e9, incident);
}

int cmd_codebook(const Globals& g) {
    const CodebookRequest req = parse_codebook_request(read_text(require_config(g)));
    const Codebook book = generate_codebook(req.geometry, req.incident, req.theta_grid, req.phi_grid);
    const fs::path path = output_path(g, req.output.value_or("codebook.json"));
    save_codebook(path, book);
    fmt::print("codebook: {}\nwrote {}\n", describe(book), path.string());
    return exit_ok;
}

int cmd_pattern(const Globals& g) {
    const fs::path config = require_config(g);
    const PatternRequest req = parse_pattern_request(read_text(config), config.parent_path());
    Codebook book;
    if (req.codebook_file) {
        book = load_codebook(*req.codebook_file);
    } else {
        const CodebookRequest& c = *req.codebook;
        book = generate_codebook(c.geometry, c.incident, c.theta_grid, c.phi_grid);
    }

    std::vector<std::size_t> entries = req.entries;
    if (entries.empty())
        for (std::size_t i = 0; i < book.size(); ++i) entries.push_back(i);
    for (std::size_t i : entries)
        if (i >= book.size())
            throw ConfigError(fmt::format("config: field 'entries': index {} out of range (codebook has {})", i,
                                          book.size()));

    fmt::print("codebook: {}\n", describe(book));
    fmt::print("entry,desired_theta_deg,desired_phi_deg,peak_phi_deg,width_deg,censored,file\n");
    for (std::size_t i : entries) {
        const Codeword& cw = book.entries[i];
        const PatternCut cut =
            pattern_cut(book.geometry, element_states(book.geometry, cw), req.element, req.theta, req.phi_axis);
        const MainLobe lobe = main_lobe(cut);
        const std::string name = fmt::format("pattern_{:03d}.csv", i);
        std::ostringstream csv;
        write_pattern_csv(csv, cut);
        write_file(output_path(g, name), csv.str());
        fmt::print("{},{:.2f},{:.2f},{:.2f},{:.2f},{},{}\n", i, rad2deg(cw.desired.theta), rad2deg(cw.desired.phi),
                   rad2deg(lobe.peak), rad2deg(lobe.half_power_width), lobe.censored ? "yes" : "no", name);
    }
    return exit_ok;
}

int cmd_simulate(const Globals& g) {
    const ScenarioFile file = load_with_overrides(g);
    const Scenario& s = file.scenario;
    const Trace trace = run(s);

    std::ostringstream csv;
    write_trace_csv(csv, trace);
    const fs::path path = output_path(g, "trace.csv");
    write_file(path, csv.str());

    const std::vector<PolicyKind> policies{s.policy};
    const PolicySummary sum = compare(s, policies, file.compare_threshold_db).policies.front();

    fmt::print("case {}, policy {}, seed {}, {} ticks of {} ms\n", case_name(s.kind), policy_name(s.policy), s.seed,
               trace.size(), s.tick_period * 1e3);
    fmt::print("snr dB: p5 {:.2f}  p50 {:.2f}  p95 {:.2f}  mean {:.2f}  min {:.2f}\n", sum.snr_p5, sum.snr_p50,
               sum.snr_p95, sum.snr_mean, sum.snr_min);
    fmt::print("overhead fraction {:.4f} ({} episodes), >=3 dB below genie {:.4f}, deep dips {}\n",
               sum.overhead_fraction, sum.overhead_episodes, sum.below_genie_3db_fraction, sum.deep_dip_episodes);
    fmt::print("mean capacity {:.2f} bps/Hz\nwrote {}\n", sum.mean_capacity_bps_hz, path.string());
    return exit_ok;
}

int cmd_compare(const Globals& g) {
    const ScenarioFile file = load_with_overrides(g);
    const ComparisonReport report = compare(file.scenario, file.compare_policies, file.compare_threshold_db);
    const fs::path path = output_path(g, "compare.json");
    write_file(path, to_json(report) + "\n");
    fmt::print("threshold {:.2f} dB, seed {}\n", report.threshold_db, report.seed);
    fmt::print("{:<8} {:>8} {:>8} {:>8} {:>10} {:>9} {:>10} {:>6}\n", "policy", "p5", "p50", "p95", "overhead",
               "episodes", "below3dB", "dips");
    for (const PolicySummary& p : report.policies)
        fmt::print("{:<8} {:>8.2f} {:>8.2f} {:>8.2f} {:>10.4f} {:>9} {:>10.4f} {:>6}\n", policy_name(p.policy),
                   p.snr_p5, p.snr_p50, p.snr_p95, p.overhead_fraction, p.overhead_episodes,
                   p.below_genie_3db_fraction, p.deep_dip_episodes);
    fmt::print("wrote {}\n", path.string());
    return exit_ok;
}

int cmd_breakdown(const Globals& g) {
    const ScenarioFile file = load_with_overrides(g);
    const BreakdownReport report = breakdown_sweep(file.scenario, file.breakdown_speeds_deg_s,
                                                   file.breakdown_deficit_db, file.breakdown_max_loss_fraction);
    const fs::path path = output_path(g, "breakdown.json");
    write_file(path, to_json(report) + "\n");
    fmt::print("policy {}\n", policy_name(report.policy));
    for (const SpeedResult& r : report.speeds)
        fmt::print("{:>8.1f} deg/s  loss {:.4f}  {}\n", r.speed_deg_s, r.lock_loss_fraction,
                   r.lock_held ? "held" : "lost");
    const auto show = [](const std::optional<double>& v) { return v ? fmt::format("{:.1f} deg/s", *v) : "none"; };
    fmt::print("last held {}, transition {}\nwrote {}\n", show(report.last_held_deg_s),
               show(report.transition_deg_s), path.string());
    return exit_ok;
}

struct FrameArgs {
    std::string opcode;
    std::optional<std::uint16_t> index;
    std::string payload_hex;
    std::string bits;
    std::string hex;
};

Opcode parse_opcode(const std::string& name) {
    if (name == "index") return Opcode::index;
    if (name == "dynamic") return Opcode::dynamic;
    if (name == "download") return Opcode::download;
    throw ConfigError(fmt::format("unknown opcode '{}' (expected index, dynamic or download)", name));
}

int cmd_frame_encode(const FrameArgs& a) {
    ControlFrame frame;
    if (a.index) {
        if (!a.opcode.empty() || !a.payload_hex.empty() || !a.bits.empty())
            throw ConfigError("--index cannot be combined with --opcode, --payload or --bits");
        frame = make_index_frame(*a.index);
    } else if (!a.bits.empty()) {
        BitVector bits;
        for (char c : a.bits) {
            if (c == '0' || c == '1') bits.push_back(static_cast<std::uint8_t>(c - '0'));
            else if (c != ' ' && c != '\n') throw ConfigError(fmt::format("--bits: unexpected character '{}'", c));
        }
        frame = make_dynamic_frame(bits);
    } else {
        if (a.opcode.empty()) throw ConfigError("frame encode needs --index, --bits or --opcode with --payload");
        frame.opcode = parse_opcode(a.opcode);
        frame.payload = parse_hex(a.payload_hex);
    }
    fmt::print("{}\n", to_hex(encode_frame(frame)));
    return exit_ok;
}

int cmd_frame_decode(const FrameArgs& a) {
    const std::vector<std::uint8_t> bytes = parse_hex(a.hex);
    const ControlFrame frame = decode_frame(bytes);
    fmt::print("opcode {} ({})\nlength {}\n", static_cast<int>(frame.opcode), opcode_name(frame.opcode),
               frame.payload.size());
    if (frame.opcode == Opcode::index && frame.payload.size() == 2)
        fmt::print("index {}\n", (frame.payload[0] << 8) | frame.payload[1]);
    fmt::print("payload {}\n", to_hex(frame.payload));
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ristrack: vision-aided beam tracking toolkit for reconfigurable surfaces"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "Command configuration file (JSON)");
    app.add_option("--out", g.out, "Output directory")->capture_default_str();
    app.add_option("--seed", g.seed, "Override the scenario seed");

    int status = exit_ok;
    auto guarded = [&status](auto&& fn) {
        return [&status, fn]() { status = fn(); };
    };

    app.add_subcommand("codebook", "Generate a codebook file")->callback(guarded([&] { return cmd_codebook(g); }));
    app.add_subcommand("pattern", "Write azimuth pattern cuts for codebook entries")
        ->callback(guarded([&] { return cmd_pattern(g); }));
    app.add_subcommand("simulate", "Run one scenario and write its trace")
        ->callback(guarded([&] { return cmd_simulate(g); }));
    app.add_subcommand("compare", "Run several policies on one scenario")
        ->callback(guarded([&] { return cmd_compare(g); }));
    app.add_subcommand("breakdown", "Sweep the angular speed and report lock loss")
        ->callback(guarded([&] { return cmd_breakdown(g); }));

    FrameArgs frame_args;
    CLI::App* frame = app.add_subcommand("frame", "Encode or decode control frames as hex");
    frame->require_subcommand(1);
    CLI::App* encode = frame->add_subcommand("encode", "Encode a frame");
    encode->add_option("--index", frame_args.index, "Index-mode frame selecting this codeword");
    encode->add_option("--bits", frame_args.bits, "Dynamic-mode frame from a row-major 0/1 string");
    encode->add_option("--opcode", frame_args.opcode, "index, dynamic or download");
    encode->add_option("--payload", frame_args.payload_hex, "Payload as hex bytes");
    encode->callback(guarded([&] { return cmd_frame_encode(frame_args); }));
    CLI::App* decode = frame->add_subcommand("decode", "Decode a hex frame");
    decode->add_option("hex", frame_args.hex, "Frame bytes as hex")->required();
    decode->callback(guarded([&] { return cmd_frame_decode(frame_args); }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_config;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const FrameError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    return status;
}
