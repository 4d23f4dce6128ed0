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

#include "ristrack/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "ristrack/codebook_io.hpp"

namespace ristrack {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ParseError(fmt::format("config: field '{}': {}", field, what), 0, field);
}

// Typed view of one JSON object that remembers which keys were read, so
// leftovers can be reported as unknown.
class Reader {
  public:
    Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return obj_.contains(key);
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        const auto it = obj_.find(key);
        if (it == obj_.end()) fail(field(key), "missing");
        return *it;
    }

    double number(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_number()) fail(field(key), "expected a number");
        return v.get<double>();
    }

    void number(const std::string& key, double& out) {
        if (has(key)) out = number(key);
    }

    void degrees(const std::string& key, double& out_rad) {
        if (has(key)) out_rad = deg2rad(number(key));
    }

    template <typename Int>
    void integer(const std::string& key, Int& out) {
        if (!has(key)) return;
        const json& v = raw(key);
        if (!v.is_number_integer()) fail(field(key), "expected an integer");
        if constexpr (std::is_unsigned_v<Int>) {
            if (v.is_number_unsigned() || v.get<long long>() >= 0) {
                out = v.get<Int>();
                return;
            }
            fail(field(key), "expected a non-negative integer");
        } else {
            out = v.get<Int>();
        }
    }

    std::string string(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_string()) fail(field(key), "expected a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_array()) fail(field(key), "expected an array");
        std::vector<double> out;
        for (const json& e : v) {
            if (!e.is_number()) fail(field(key), "expected an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

    Reader object(const std::string& key) { return Reader(raw(key), field(key)); }

    void finish() const {
        for (const auto& [k, _] : obj_.items())
            if (!seen_.count(k)) fail(field(k), "unknown key");
    }

  private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
        const auto line = static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n')) + 1;
        throw ParseError(fmt::format("config: syntax error at line {}: {}", line, e.what()), line, "");
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void read_geometry(Reader r, RisGeometry& g) {
    r.integer("rows", g.rows);
    r.integer("cols", g.cols);
    r.number("spacing_over_lambda", g.spacing_over_lambda);
    r.number("freq_hz", g.frequency_hz);
    r.finish();
    try {
        g.validate();
    } catch (const DomainError& e) {
        fail(r.field("*"), e.what());
    }
}

IncidentModel read_incident(Reader r, const RisGeometry& g) {
    const std::string type = r.string("type");
    IncidentModel model;
    if (type == "near") {
        const bool meters = r.has("d_feed_m");
        const bool wavelengths = r.has("d_feed_wavelengths");
        if (meters == wavelengths) fail(r.field("d_feed_m"), "give exactly one of d_feed_m or d_feed_wavelengths");
        const double d = meters ? r.number("d_feed_m") : r.number("d_feed_wavelengths") * g.wavelength();
        if (!(d > 0.0)) fail(r.field(meters ? "d_feed_m" : "d_feed_wavelengths"), "must be positive");
        model = NearFieldFeed{d};
    } else if (type == "far") {
        model = FarFieldPlane{{deg2rad(r.number("theta_tx_deg")), deg2rad(r.number("phi_tx_deg"))}};
    } else {
        fail(r.field("type"), "expected \"near\" or \"far\"");
    }
    r.finish();
    return model;
}

// Either an explicit list "<name>_deg" or a range object "<name>".
std::vector<double> read_grid(Reader& r, const std::string& name, std::vector<double> fallback) {
    const bool list = r.has(name + "_deg");
    const bool range = r.has(name);
    if (list && range) fail(r.field(name), fmt::format("give either {0}_deg or {0}, not both", name));
    std::vector<double> deg;
    if (list) {
        deg = r.numbers(name + "_deg");
    } else if (range) {
        Reader g = r.object(name);
        const double start = g.number("start_deg");
        const double stop = g.number("stop_deg");
        const double step = g.number("step_deg");
        g.finish();
        try {
            deg = linear_grid(start, stop, step);
        } catch (const DomainError& e) {
            fail(r.field(name), e.what());
        }
    } else {
        return fallback;
    }
    if (deg.empty()) fail(r.field(list ? name + "_deg" : name), "grid is empty");
    for (std::size_t i = 1; i < deg.size(); ++i)
        if (!(deg[i] > deg[i - 1])) fail(r.field(list ? name + "_deg" : name), "grid is not strictly increasing");
    std::vector<double> rad;
    for (double d : deg) rad.push_back(deg2rad(d));
    return rad;
}

std::vector<double> default_phi_grid() { return linear_grid(deg2rad(-40.0), deg2rad(40.0), deg2rad(1.0)); }

}  // namespace

ScenarioFile parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
    const json root = parse_json(text);
    Reader r(root, "");

    CaseKind kind = CaseKind::near_field_feed;
    if (r.has("case")) {
        const std::string c = r.string("case");
        if (c == "near_field_feed") kind = CaseKind::near_field_feed;
        else if (c == "far_field_relay") kind = CaseKind::far_field_relay;
        else fail("case", "expected \"near_field_feed\" or \"far_field_relay\"");
    }

    ScenarioFile file;
    Scenario& s = file.scenario;
    s = kind == CaseKind::near_field_feed ? near_field_scenario() : far_field_scenario();

    // Codebook: from a file, or regenerated when any of its inputs change.
    RisGeometry geom = s.codebook.geometry;
    IncidentModel incident = s.codebook.incident;
    std::vector<double> theta_grid = s.codebook.theta_grid;
    std::vector<double> phi_grid = s.codebook.phi_grid;
    bool regenerate = false;
    if (r.has("geometry")) {
        read_geometry(r.object("geometry"), geom);
        regenerate = true;
        if (kind == CaseKind::near_field_feed && !r.has("incident"))
            incident = NearFieldFeed{3.0 * geom.wavelength()};
    }
    if (r.has("incident")) {
        incident = read_incident(r.object("incident"), geom);
        regenerate = true;
    }
    if (r.has("codebook")) {
        Reader c = r.object("codebook");
        theta_grid = read_grid(c, "theta", {pi / 2});
        phi_grid = read_grid(c, "phi", default_phi_grid());
        c.finish();
        regenerate = true;
    }
    if (r.has("codebook_file")) {
        if (regenerate) fail("codebook_file", "cannot be combined with geometry, incident or codebook");
        std::filesystem::path path = r.string("codebook_file");
        if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
        s.codebook = load_codebook(path);
    } else if (regenerate) {
        try {
            s.codebook = generate_codebook(geom, incident, theta_grid, phi_grid);
        } catch (const DomainError& e) {
            fail("codebook", e.what());
        }
    }

    if (r.has("element_exponent")) {
        s.element.exponent = r.number("element_exponent");
        if (!(s.element.exponent >= 0.0)) fail("element_exponent", "must be >= 0");
    }
    if (r.has("policy")) s.policy = parse_policy(r.string("policy"));

    if (r.has("sweep")) {
        Reader w = r.object("sweep");
        w.integer("dwell_ticks", s.sweep.dwell_ticks);
        w.number("trigger_drop_db", s.sweep.trigger_drop_db);
        w.integer("local_window", s.sweep.local_window);
        w.finish();
    }
    if (r.has("vision")) {
        Reader v = r.object("vision");
        v.number("latency_s", s.vision.latency);
        v.number("refresh_period_s", s.vision.refresh_period);
        v.finish();
    }
    if (r.has("rig")) {
        Reader g = r.object("rig");
        g.number("focal_px", s.rig.focal_px);
        g.number("baseline_m", s.rig.baseline);
        g.integer("image_width", s.rig.image_width);
        g.integer("image_height", s.rig.image_height);
        for (const char* key : {"left_principal", "right_principal"}) {
            if (!g.has(key)) continue;
            const std::vector<double> xy = g.numbers(key);
            if (xy.size() != 2) fail(g.field(key), "expected [x, y]");
            (std::string(key) == "left_principal" ? s.rig.left_principal : s.rig.right_principal) = {xy[0], xy[1]};
        }
        g.finish();
    }
    if (r.has("detector")) {
        Reader d = r.object("detector");
        d.number("pixel_noise_sigma", s.detector.pixel_noise_sigma);
        d.number("miss_probability", s.detector.miss_probability);
        d.number("box_width_px", s.detector.box_width);
        d.number("box_height_px", s.detector.box_height);
        d.finish();
    }
    if (r.has("trajectory")) {
        Reader t = r.object("trajectory");
        t.number("radius_m", s.trajectory.radius);
        t.degrees("theta_deg", s.trajectory.theta);
        t.degrees("phi_start_deg", s.trajectory.phi_start);
        t.degrees("phi_end_deg", s.trajectory.phi_end);
        t.degrees("phi_initial_deg", s.trajectory.phi_initial);
        t.degrees("angular_speed_deg_s", s.trajectory.angular_speed);
        if (t.has("direction")) {
            const std::string dir = t.string("direction");
            if (dir != "increasing" && dir != "decreasing") fail(t.field("direction"), "expected increasing or decreasing");
            s.trajectory.initially_increasing = dir == "increasing";
        }
        t.finish();
    }
    if (r.has("budget")) {
        Reader b = r.object("budget");
        b.number("tx_power_dbm", s.budget.tx_power_dbm);
        b.number("tx_antenna_gain_db", s.budget.tx_antenna_gain_db);
        b.number("rx_antenna_gain_db", s.budget.rx_antenna_gain_db);
        b.number("tx_link_gain_db", s.budget.tx_link_gain_db);
        b.number("rx_link_gain_db", s.budget.rx_link_gain_db);
        b.number("noise_power_dbm", s.budget.noise_power_dbm);
        b.integer("subcarriers", s.budget.subcarriers);
        b.number("snr_calibration_db", s.budget.snr_calibration_db);
        b.finish();
    }
    if (r.has("target_peak_snr_db")) {
        const json& v = r.raw("target_peak_snr_db");
        if (v.is_null()) s.target_peak_snr_db.reset();
        else if (v.is_number()) s.target_peak_snr_db = v.get<double>();
        else fail("target_peak_snr_db", "expected a number or null");
    }
    r.number("bs_ris_distance_m", s.bs_ris_distance);
    r.number("tick_period_s", s.tick_period);
    r.integer("duration_ticks", s.duration_ticks);
    r.integer("seed", s.seed);
    r.number("snr_jitter_db", s.snr_jitter_db);
    if (r.has("timing")) {
        Reader t = r.object("timing");
        t.number("serial_baud", s.timing.serial_baud);
        t.integer("wire_bits_per_byte", s.timing.wire_bits_per_byte);
        t.integer("inter_chip_bits_per_clock", s.timing.inter_chip_bits_per_clock);
        t.number("inter_chip_clock_hz", s.timing.inter_chip_clock_hz);
        t.number("refresh_settle_s", s.timing.refresh_settle);
        t.finish();
    }
    r.integer("flash_capacity", s.flash_capacity);

    if (r.has("compare")) {
        Reader c = r.object("compare");
        if (c.has("policies")) {
            const json& list = c.raw("policies");
            if (!list.is_array() || list.empty()) fail(c.field("policies"), "expected a nonempty array of names");
            file.compare_policies.clear();
            for (const json& p : list) {
                if (!p.is_string()) fail(c.field("policies"), "expected policy names");
                file.compare_policies.push_back(parse_policy(p.get<std::string>()));
            }
        }
        if (c.has("threshold_db")) file.compare_threshold_db = c.number("threshold_db");
        c.finish();
    }
    if (r.has("breakdown")) {
        Reader b = r.object("breakdown");
        if (b.has("speeds_deg_s")) {
            file.breakdown_speeds_deg_s = b.numbers("speeds_deg_s");
            if (file.breakdown_speeds_deg_s.empty()) fail(b.field("speeds_deg_s"), "is empty");
            for (double v : file.breakdown_speeds_deg_s)
                if (!(v > 0.0)) fail(b.field("speeds_deg_s"), "speeds must be positive");
        }
        b.number("deficit_db", file.breakdown_deficit_db);
        b.number("max_loss_fraction", file.breakdown_max_loss_fraction);
        b.finish();
    }
    r.finish();

    s.detector.seed = s.seed;
    s.detector.latency = s.vision.latency;
    s.validate();
    return file;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    return parse_scenario(read_file(path), path.parent_path());
}

namespace {

CodebookRequest read_codebook_request(Reader& r) {
    CodebookRequest req;
    if (r.has("geometry")) read_geometry(r.object("geometry"), req.geometry);
    if (r.has("incident")) req.incident = read_incident(r.object("incident"), req.geometry);
    else req.incident = NearFieldFeed{3.0 * req.geometry.wavelength()};
    req.theta_grid = read_grid(r, "theta", {pi / 2});
    req.phi_grid = read_grid(r, "phi", default_phi_grid());
    return req;
}

}  // namespace

CodebookRequest parse_codebook_request(std::string_view text) {
    const json root = parse_json(text);
    Reader r(root, "");
    CodebookRequest req = read_codebook_request(r);
    if (r.has("output")) req.output = r.string("output");
    r.finish();
    return req;
}

PatternRequest parse_pattern_request(std::string_view text, const std::filesystem::path& base_dir) {
    const json root = parse_json(text);
    Reader r(root, "");
    PatternRequest req;
    if (r.has("codebook_file")) {
        std::filesystem::path path = r.string("codebook_file");
        if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
        req.codebook_file = path;
    }
    if (r.has("codebook")) {
        if (req.codebook_file) fail("codebook", "give either codebook or codebook_file");
        Reader c = r.object("codebook");
        req.codebook = read_codebook_request(c);
        c.finish();
    }
    if (!req.codebook_file && !req.codebook) fail("codebook_file", "missing (or give an inline codebook)");
    r.degrees("theta_deg", req.theta);
    req.phi_axis = read_grid(r, "phi", {});
    if (req.phi_axis.empty()) {
        for (double d : linear_grid(-90.0, 90.0, 0.5)) req.phi_axis.push_back(deg2rad(d));
    }
    if (r.has("element_exponent")) {
        req.element.exponent = r.number("element_exponent");
        if (!(req.element.exponent >= 0.0)) fail("element_exponent", "must be >= 0");
    }
    if (r.has("entries")) {
        const json& list = r.raw("entries");
        if (!list.is_array()) fail("entries", "expected an array of indices");
        for (const json& e : list) {
            if (!e.is_number_unsigned()) fail("entries", "expected non-negative integers");
            req.entries.push_back(e.get<std::size_t>());
        }
    }
    r.finish();
    return req;
}

}  // namespace ristrack
