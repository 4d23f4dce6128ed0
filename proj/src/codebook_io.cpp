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

#include "ristrack/codebook_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

namespace ristrack {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ParseError(fmt::format("codebook: field '{}': {}", field, what), 0, field);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path + key, "missing");
    return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number()) fail(path + key, "expected a number");
    return v.get<double>();
}

int integer(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number_integer()) fail(path + key, "expected an integer");
    return v.get<int>();
}

void only_keys(const json& obj, std::initializer_list<std::string_view> keys, const std::string& path) {
    for (const auto& [k, _] : obj.items())
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) fail(path + k, "unknown key");
}

// Unique values in first-seen order.
std::vector<double> distinct_in_order(const std::vector<double>& values) {
    std::vector<double> out;
    for (double v : values)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}

}  // namespace

std::string serialize_codebook(const Codebook& book) {
    json j;
    j["M"] = book.geometry.rows;
    j["N"] = book.geometry.cols;
    j["spacing_over_lambda"] = book.geometry.spacing_over_lambda;
    j["freq_hz"] = book.geometry.frequency_hz;
    if (const auto* near = std::get_if<NearFieldFeed>(&book.incident)) {
        j["incident"] = {{"type", "near"}, {"d_feed_m", near->feed_distance}};
    } else {
        const auto& far = std::get<FarFieldPlane>(book.incident);
        j["incident"] = {{"type", "far"}, {"theta_tx_deg", rad2deg(far.tx.theta)}, {"phi_tx_deg", rad2deg(far.tx.phi)}};
    }
    json entries = json::array();
    for (const Codeword& cw : book.entries) {
        json rows = json::array();
        for (std::size_t r = 0; r < cw.bits.rows(); ++r) {
            std::string row(cw.bits.cols(), '0');
            for (std::size_t c = 0; c < cw.bits.cols(); ++c)
                if (cw.bits(r, c)) row[c] = '1';
            rows.push_back(row);
        }
        entries.push_back({{"theta_deg", rad2deg(cw.desired.theta)},
                           {"phi_deg", rad2deg(cw.desired.phi)},
                           {"bits", std::move(rows)}});
    }
    j["entries"] = std::move(entries);
    return j.dump(2) + "\n";
}

Codebook parse_codebook(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
        const auto line = static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n')) + 1;
        throw ParseError(fmt::format("codebook: syntax error at line {}: {}", line, e.what()), line, "");
    }
    if (!j.is_object()) fail("", "top level must be an object");
    only_keys(j, {"M", "N", "spacing_over_lambda", "freq_hz", "incident", "entries"}, "");

    Codebook book;
    book.geometry.rows = integer(j, "M", "");
    book.geometry.cols = integer(j, "N", "");
    book.geometry.spacing_over_lambda = number(j, "spacing_over_lambda", "");
    book.geometry.frequency_hz = number(j, "freq_hz", "");
    try {
        book.geometry.validate();
    } catch (const DomainError& e) {
        fail("M/N/spacing_over_lambda/freq_hz", e.what());
    }

    const json& inc = require(j, "incident", "");
    if (!inc.is_object()) fail("incident", "expected an object");
    const json& type = require(inc, "type", "incident.");
    if (type == "near") {
        only_keys(inc, {"type", "d_feed_m"}, "incident.");
        const double d_feed = number(inc, "d_feed_m", "incident.");
        if (!(d_feed > 0.0)) fail("incident.d_feed_m", "must be positive");
        book.incident = NearFieldFeed{d_feed};
    } else if (type == "far") {
        only_keys(inc, {"type", "theta_tx_deg", "phi_tx_deg"}, "incident.");
        book.incident = FarFieldPlane{{deg2rad(number(inc, "theta_tx_deg", "incident.")),
                                       deg2rad(number(inc, "phi_tx_deg", "incident."))}};
    } else {
        fail("incident.type", "expected \"near\" or \"far\"");
    }

    const json& entries = require(j, "entries", "");
    if (!entries.is_array() || entries.empty()) fail("entries", "expected a nonempty array");

    std::vector<double> thetas_deg;
    std::vector<double> phis_deg;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string path = fmt::format("entries[{}].", i);
        const json& e = entries[i];
        if (!e.is_object()) fail(path, "expected an object");
        only_keys(e, {"theta_deg", "phi_deg", "bits"}, path);
        const double theta_deg = number(e, "theta_deg", path);
        const double phi_deg = number(e, "phi_deg", path);
        const json& rows = require(e, "bits", path);
        if (!rows.is_array() || rows.size() != static_cast<std::size_t>(book.geometry.rows))
            fail(path + "bits", fmt::format("expected {} row strings", book.geometry.rows));

        Codeword cw{BitMatrix(book.geometry.rows, book.geometry.cols),
                    {deg2rad(theta_deg), deg2rad(phi_deg)}, book.incident};
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::string field = fmt::format("{}bits[{}]", path, r);
            if (!rows[r].is_string()) fail(field, "expected a string");
            const auto& row = rows[r].get_ref<const std::string&>();
            if (row.size() != static_cast<std::size_t>(book.geometry.cols))
                fail(field, fmt::format("expected {} characters, found {}", book.geometry.cols, row.size()));
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (row[c] != '0' && row[c] != '1') fail(field, fmt::format("invalid character '{}'", row[c]));
                cw.bits(r, c) = row[c] == '1' ? 1 : 0;
            }
        }
        thetas_deg.push_back(theta_deg);
        phis_deg.push_back(phi_deg);
        book.entries.push_back(std::move(cw));
    }

    // Recover the lattice and check the row-major ordering.
    const std::vector<double> theta_axis = distinct_in_order(thetas_deg);
    const std::vector<double> phi_axis = distinct_in_order(phis_deg);
    if (theta_axis.size() * phi_axis.size() != book.entries.size())
        fail("entries", "entries do not form a complete (theta, phi) lattice");
    for (std::size_t i = 0; i < book.entries.size(); ++i)
        if (thetas_deg[i] != theta_axis[i / phi_axis.size()] || phis_deg[i] != phi_axis[i % phi_axis.size()])
            fail(fmt::format("entries[{}]", i), "entry is out of row-major (theta, phi) order");
    for (const auto* axis : {&theta_axis, &phi_axis})
        for (std::size_t i = 1; i < axis->size(); ++i)
            if (!((*axis)[i] > (*axis)[i - 1])) fail("entries", "angle grid is not strictly increasing");

    for (double t : theta_axis) book.theta_grid.push_back(deg2rad(t));
    for (double p : phi_axis) book.phi_grid.push_back(deg2rad(p));
    return book;
}

void save_codebook(const std::filesystem::path& path, const Codebook& book) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
    out << serialize_codebook(book);
    if (!out) throw Error(fmt::format("failed writing '{}'", path.string()));
}

Codebook load_codebook(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(fmt::format("cannot open codebook file '{}'", path.string()));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_codebook(buffer.str());
}

}  // namespace ristrack
