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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <random>
#include <vector>

#include "doctest.h"
#include "ristrack/codebook.hpp"
#include "ristrack/errors.hpp"
#include "ristrack/wavefield.hpp"

using namespace ristrack;

namespace {

Matrix<ElementState> uniform_states(const RisGeometry& g) { return Matrix<ElementState>(g.rows, g.cols); }

std::vector<double> axis_deg(double start, double stop, double step) {
    std::vector<double> out;
    for (double d : linear_grid(start, stop, step)) out.push_back(deg2rad(d));
    return out;
}

}  // namespace

TEST_CASE("coherent boresight sum") {
    const RisGeometry g;
    const cd e = scattering_field(g, uniform_states(g), {}, {pi / 2, 0});
    CHECK(std::abs(e) == doctest::Approx(400.0).epsilon(1e-12));
}

TEST_CASE("single element follows the element pattern") {
    RisGeometry g;
    g.rows = g.cols = 1;
    const ElementPattern iso;
    const ElementPattern cosq{2.0};
    for (double phi = -1.5; phi < 1.5; phi += 0.1) {
        const Direction d{1.2, phi};
        CHECK(std::abs(scattering_field(g, uniform_states(g), iso, d)) == doctest::Approx(1.0));
        CHECK(std::abs(scattering_field(g, uniform_states(g), cosq, d)) == doctest::Approx(cosq(d)));
    }
}

TEST_CASE("2x2 quarter-wave endfire magnitude") {
    RisGeometry g;
    g.rows = g.cols = 2;
    const cd e = scattering_field(g, uniform_states(g), {}, {pi / 2, pi / 2});
    CHECK(std::abs(e) == doctest::Approx(2.8284271247461903).epsilon(1e-12));
}

TEST_CASE("shape mismatch") {
    const RisGeometry g;
    CHECK_THROWS_AS(scattering_field(g, Matrix<ElementState>(3, 3), {}, {pi / 2, 0}), ShapeError);
}

TEST_CASE("gain_db") {
    CHECK(gain_db(5.0, 5.0) == doctest::Approx(0.0));
    CHECK(gain_db(0.5, 5.0) == doctest::Approx(-20.0));
    CHECK_THROWS_AS(gain_db(1.0, 0.0), DegeneratePatternError);
}

TEST_CASE("boresight codeword peaks at boresight on the cut") {
    const RisGeometry g;
    const IncidentModel feed = NearFieldFeed{3.0 * g.wavelength()};
    const Codeword cw = generate_codeword(g, feed, {pi / 2, 0});
    const std::vector<double> axis = axis_deg(-90, 90, 0.5);
    const PatternCut cut = pattern_cut(g, element_states(g, cw), {}, pi / 2, axis);
    const auto peak = std::max_element(cut.gain_db.begin(), cut.gain_db.end()) - cut.gain_db.begin();
    CHECK(cut.phi[static_cast<std::size_t>(peak)] == doctest::Approx(0.0));
    CHECK(cut.gain_db[static_cast<std::size_t>(peak)] == 0.0);
}

TEST_CASE("pattern_cut validates its axis") {
    const RisGeometry g;
    const std::vector<double> empty;
    const std::vector<double> unordered{0.1, 0.0};
    CHECK_THROWS_AS(pattern_cut(g, uniform_states(g), {}, pi / 2, empty), DomainError);
    CHECK_THROWS_AS(pattern_cut(g, uniform_states(g), {}, pi / 2, unordered), DomainError);
}

TEST_CASE("pattern_cut is deterministic") {
    const RisGeometry g;
    const Codeword cw = generate_codeword(g, NearFieldFeed{3.0 * g.wavelength()}, {pi / 2, deg2rad(20)});
    const std::vector<double> axis = axis_deg(-90, 90, 0.5);
    const PatternCut a = pattern_cut(g, element_states(g, cw), {}, pi / 2, axis);
    const PatternCut b = pattern_cut(g, element_states(g, cw), {}, pi / 2, axis);
    CHECK(a.magnitude == b.magnitude);
    CHECK(a.gain_db == b.gain_db);
}

TEST_CASE("all-zero codeword under normal incidence peaks at boresight") {
    const RisGeometry g;
    const Codeword cw = generate_codeword(g, FarFieldPlane{{pi / 2, 0}}, {pi / 2, 0});
    const PatternCut cut = pattern_cut(g, element_states(g, cw), {}, pi / 2, axis_deg(-90, 90, 0.5));
    CHECK(rad2deg(main_lobe(cut).peak) == doctest::Approx(0.0));
}

TEST_CASE("main_lobe on a synthetic cut") {
    PatternCut cut;
    cut.phi = {deg2rad(-2), deg2rad(-1), 0.0, deg2rad(1), deg2rad(2)};
    cut.gain_db = {-10, -1, 0, -1, -10};
    cut.magnitude.assign(5, 1.0);
    const MainLobe lobe = main_lobe(cut);
    CHECK(lobe.peak == 0.0);
    CHECK_FALSE(lobe.censored);
    CHECK(rad2deg(lobe.half_power_width) == doctest::Approx(2.0 + 4.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("main_lobe ties go to the smaller phi") {
    PatternCut cut;
    cut.phi = {0.0, 0.1, 0.2, 0.3, 0.4};
    cut.gain_db = {-10, 0, -10, 0, -10};
    cut.magnitude.assign(5, 1.0);
    CHECK(main_lobe(cut).peak == 0.1);
}

TEST_CASE("flat pattern is censored") {
    RisGeometry g;
    g.rows = g.cols = 1;
    const PatternCut cut = pattern_cut(g, uniform_states(g), {}, pi / 2, axis_deg(-90, 90, 1));
    const MainLobe lobe = main_lobe(cut);
    CHECK(lobe.censored);
}

TEST_CASE("boresight main lobe is wider than 10 degrees") {
    const RisGeometry g;
    const Codeword cw = generate_codeword(g, NearFieldFeed{3.0 * g.wavelength()}, {pi / 2, 0});
    const PatternCut cut = pattern_cut(g, element_states(g, cw), {}, pi / 2, axis_deg(-90, 90, 0.5));
    CHECK(rad2deg(main_lobe(cut).half_power_width) > 10.0);
}

TEST_CASE("triangle bound and exact compensation") {
    RisGeometry g;
    g.rows = 6;
    g.cols = 5;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ph(-pi, pi);
    std::uniform_real_distribution<double> amp(0.0, 2.0);
    Matrix<ElementState> s(g.rows, g.cols);
    double bound = 0.0;
    for (auto& e : s.values()) {
        e.mod_amplitude = amp(rng);
        e.inc_amplitude = amp(rng);
        e.mod_phase = ph(rng);
        e.inc_phase = ph(rng);
        bound += e.mod_amplitude * e.inc_amplitude;
    }
    for (int i = 0; i < 200; ++i) {
        const Direction d{std::uniform_real_distribution<double>(0, pi)(rng), ph(rng) / 2};
        CHECK(std::abs(scattering_field(g, s, {}, d)) <= bound * (1 + 1e-12));
    }

    // Unquantized compensation reaches the bound at the steered direction.
    const Direction target{deg2rad(75), deg2rad(25)};
    double unit_bound = 0.0;
    for (int m = 1; m <= g.rows; ++m)
        for (int n = 1; n <= g.cols; ++n) {
            ElementState& e = s(m - 1, n - 1);
            e.mod_phase = -steering_phase(g, target, m, n) - e.inc_phase;
            unit_bound += e.mod_amplitude * e.inc_amplitude;
        }
    CHECK(std::abs(scattering_field(g, s, {}, target)) == doctest::Approx(unit_bound).epsilon(1e-12));
}

TEST_CASE("common phase offset leaves the magnitude unchanged") {
    const RisGeometry g;
    const Codeword cw = generate_codeword(g, NearFieldFeed{3.0 * g.wavelength()}, {pi / 2, deg2rad(15)});
    Matrix<ElementState> s = element_states(g, cw);
    Matrix<ElementState> shifted = s;
    for (auto& e : shifted.values()) e.mod_phase += 1.234;
    for (double phi = -1.5; phi <= 1.5; phi += 0.05) {
        const Direction d{1.4, phi};
        const double a = std::abs(scattering_field(g, s, {}, d));
        const double b = std::abs(scattering_field(g, shifted, {}, d));
        CHECK(b == doctest::Approx(a).epsilon(1e-9));
    }
}

TEST_CASE("fspl") {
    CHECK(fspl_db(4 * pi * 2.0, 2.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fspl_db(0.055513, 2.2) == doctest::Approx(53.9447569399659).epsilon(1e-10));
    const RisGeometry g;
    CHECK(fspl_db(g.wavelength(), 2.2) == doctest::Approx(53.9441120347869).epsilon(1e-10));
    CHECK(fspl_db(0.05, 4.4) - fspl_db(0.05, 2.2) == doctest::Approx(20 * std::log10(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(fspl_db(0.05, 0.0), DomainError);
    double prev = fspl_db(0.05, 0.1);
    for (double d = 0.2; d < 100; d *= 1.3) {
        const double cur = fspl_db(0.05, d);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("received SNR stack") {
    LinkBudget zero{0, 0, 0, 0, 0, 0, 1, 0};
    CHECK(received_snr_db(zero, 0.0, 0.0) == doctest::Approx(0.0));
    LinkBudget table = zero;
    table.tx_antenna_gain_db = table.rx_antenna_gain_db = 7;
    table.tx_link_gain_db = 30;
    table.rx_link_gain_db = 22;
    CHECK(received_snr_db(table, 0, 0) - received_snr_db(zero, 0, 0) == doctest::Approx(66.0));
    CHECK(received_snr_db(table, 0, 10) < received_snr_db(table, 0, 9));
}

TEST_CASE("capacity") {
    const std::vector<double> silent{-1000.0};
    CHECK(capacity_bps_hz(silent) == doctest::Approx(0.0));
    CHECK(capacity_bps_hz(0.0, 1) == doctest::Approx(1.0));
    CHECK(capacity_bps_hz(10 * std::log10(15.0), 52) == doctest::Approx(208.0).epsilon(1e-12));
    const std::vector<double> mixed{0.0, 10 * std::log10(3.0)};
    CHECK(capacity_bps_hz(mixed) == doctest::Approx(3.0));
    CHECK(capacity_bps_hz(10.1, 4) > capacity_bps_hz(10.0, 4));
    CHECK_THROWS_AS(capacity_bps_hz(0.0, 0), DomainError);
}

TEST_CASE("pattern CSV layout") {
    PatternCut cut;
    cut.phi = {0.0};
    cut.magnitude = {2.0};
    cut.gain_db = {0.0};
    std::ostringstream out;
    write_pattern_csv(out, cut);
    CHECK(out.str() == "phi_deg,magnitude,gain_db\n0.000000,2.000000000,0.000000\n");
}
