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

#include "ristrack/wavefield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "ristrack/errors.hpp"

namespace ristrack {

namespace {

void check_shape(const RisGeometry& geom, std::size_t rows, std::size_t cols) {
    if (rows != static_cast<std::size_t>(geom.rows) || cols != static_cast<std::size_t>(geom.cols))
        throw ShapeError(fmt::format("element matrix is {}x{}, geometry is {}x{}", rows, cols,
                                     geom.rows, geom.cols));
}

void check_axis(std::span<const double> axis, const char* name) {
    if (axis.empty()) throw DomainError(fmt::format("{} axis is empty", name));
    for (std::size_t i = 1; i < axis.size(); ++i)
        if (!(axis[i] > axis[i - 1]))
            throw DomainError(fmt::format("{} axis is not strictly increasing", name));
}

}  // namespace

double ElementPattern::operator()(const Direction& dir) const {
    if (exponent == 0.0) return 1.0;
    const double projection = std::max(std::sin(dir.theta) * std::cos(dir.phi), 0.0);
    return std::pow(projection, exponent);
}

double steering_phase(const RisGeometry& geom, const Direction& dir, int m, int n) noexcept {
    const double kd = 2.0 * pi * geom.spacing_over_lambda;
    const double row_offset = (geom.rows + 1) / 2.0 - m;
    const double col_offset = n - (1 + geom.cols) / 2.0;
    return kd * row_offset * std::cos(dir.theta) +
           kd * col_offset * std::sin(dir.theta) * std::sin(dir.phi);
}

std::vector<cd> element_weights(const Matrix<ElementState>& states) {
    std::vector<cd> weights;
    weights.reserve(states.size());
    for (const ElementState& s : states.values())
        weights.push_back(std::polar(s.mod_amplitude * s.inc_amplitude, s.mod_phase + s.inc_phase));
    return weights;
}

cd array_factor(const RisGeometry& geom, std::span<const cd> weights,
                const ElementPattern& pattern, const Direction& dir) {
    if (weights.size() != static_cast<std::size_t>(geom.elements()))
        throw ShapeError("weight vector does not match the geometry");

    // The geometric phase separates into a row term and a column term.
    std::vector<cd> row_phasor(geom.rows);
    std::vector<cd> col_phasor(geom.cols);
    const double kd = 2.0 * pi * geom.spacing_over_lambda;
    const double ct = std::cos(dir.theta);
    const double stsp = std::sin(dir.theta) * std::sin(dir.phi);
    for (int m = 1; m <= geom.rows; ++m)
        row_phasor[m - 1] = std::polar(1.0, kd * ((geom.rows + 1) / 2.0 - m) * ct);
    for (int n = 1; n <= geom.cols; ++n)
        col_phasor[n - 1] = std::polar(1.0, kd * (n - (1 + geom.cols) / 2.0) * stsp);

    cd total{0.0, 0.0};
    for (int m = 0; m < geom.rows; ++m) {
        cd row_sum{0.0, 0.0};
        const cd* w = weights.data() + static_cast<std::size_t>(m) * geom.cols;
        for (int n = 0; n < geom.cols; ++n) row_sum += w[n] * col_phasor[n];
        total += row_sum * row_phasor[m];
    }
    return pattern(dir) * total;
}

cd scattering_field(const RisGeometry& geom, const Matrix<ElementState>& states,
                    const ElementPattern& pattern, const Direction& dir) {
    check_shape(geom, states.rows(), states.cols());
    return array_factor(geom, element_weights(states), pattern, dir);
}

double gain_db(double magnitude, double reference) {
    if (!(reference > 0.0)) throw DegeneratePatternError("reference magnitude is zero");
    if (magnitude < 0.0) throw DomainError("gain_db: negative magnitude");
    return 20.0 * std::log10(magnitude / reference);
}

PatternCut pattern_cut(const RisGeometry& geom, const Matrix<ElementState>& states,
                       const ElementPattern& pattern, double theta,
                       std::span<const double> phi_axis) {
    check_shape(geom, states.rows(), states.cols());
    check_axis(phi_axis, "phi");

    const std::vector<cd> weights = element_weights(states);
    PatternCut cut;
    cut.theta = theta;
    cut.phi.assign(phi_axis.begin(), phi_axis.end());
    cut.magnitude.reserve(phi_axis.size());
    for (double phi : phi_axis) cut.magnitude.push_back(std::abs(array_factor(geom, weights, pattern, {theta, phi})));

    const double peak = *std::max_element(cut.magnitude.begin(), cut.magnitude.end());
    cut.gain_db.reserve(cut.magnitude.size());
    for (double mag : cut.magnitude) cut.gain_db.push_back(gain_db(mag, peak));
    return cut;
}

PatternGrid pattern_grid(const RisGeometry& geom, const Matrix<ElementState>& states,
                         const ElementPattern& pattern, std::span<const double> theta_axis,
                         std::span<const double> phi_axis) {
    check_shape(geom, states.rows(), states.cols());
    check_axis(theta_axis, "theta");
    check_axis(phi_axis, "phi");

    const std::vector<cd> weights = element_weights(states);
    PatternGrid grid;
    grid.theta_axis.assign(theta_axis.begin(), theta_axis.end());
    grid.phi_axis.assign(phi_axis.begin(), phi_axis.end());
    grid.magnitude = Matrix<double>(theta_axis.size(), phi_axis.size());
    grid.gain_db = Matrix<double>(theta_axis.size(), phi_axis.size());

    double peak = 0.0;
    for (std::size_t i = 0; i < theta_axis.size(); ++i)
        for (std::size_t j = 0; j < phi_axis.size(); ++j) {
            const double mag = std::abs(array_factor(geom, weights, pattern, {theta_axis[i], phi_axis[j]}));
            grid.magnitude(i, j) = mag;
            peak = std::max(peak, mag);
        }
    for (std::size_t i = 0; i < theta_axis.size(); ++i)
        for (std::size_t j = 0; j < phi_axis.size(); ++j)
            grid.gain_db(i, j) = gain_db(grid.magnitude(i, j), peak);
    return grid;
}

MainLobe main_lobe(const PatternCut& cut) {
    if (cut.phi.empty() || cut.gain_db.size() != cut.phi.size())
        throw DomainError("main_lobe: empty or inconsistent cut");

    constexpr double threshold = -3.0;
    const auto& g = cut.gain_db;
    const std::size_t peak = static_cast<std::size_t>(std::max_element(g.begin(), g.end()) - g.begin());

    MainLobe lobe;
    lobe.peak = cut.phi[peak];

    // Interpolated crossing between an inside sample i and outside sample o.
    auto crossing = [&](std::size_t i, std::size_t o) {
        const double t = (g[i] - threshold) / (g[i] - g[o]);
        return cut.phi[i] + t * (cut.phi[o] - cut.phi[i]);
    };

    std::size_t lo = peak;
    while (lo > 0 && g[lo - 1] >= threshold) --lo;
    if (lo == 0) {
        lobe.lower_edge = cut.phi.front();
        lobe.censored = true;
    } else {
        lobe.lower_edge = crossing(lo, lo - 1);
    }

    std::size_t hi = peak;
    while (hi + 1 < g.size() && g[hi + 1] >= threshold) ++hi;
    if (hi + 1 == g.size()) {
        lobe.upper_edge = cut.phi.back();
        lobe.censored = true;
    } else {
        lobe.upper_edge = crossing(hi, hi + 1);
    }

    lobe.half_power_width = lobe.upper_edge - lobe.lower_edge;
    return lobe;
}

void write_pattern_csv(std::ostream& out, const PatternCut& cut) {
    out << "phi_deg,magnitude,gain_db\n";
    for (std::size_t i = 0; i < cut.phi.size(); ++i)
        fmt::print(out, "{:.6f},{:.9f},{:.6f}\n", rad2deg(cut.phi[i]), cut.magnitude[i], cut.gain_db[i]);
}

void LinkBudget::validate() const {
    if (subcarriers < 1) throw DomainError("link budget: subcarrier count must be >= 1");
    for (double v : {tx_power_dbm, tx_antenna_gain_db, rx_antenna_gain_db, tx_link_gain_db,
                     rx_link_gain_db, noise_power_dbm, snr_calibration_db})
        if (!std::isfinite(v)) throw DomainError("link budget: non-finite term");
}

double fspl_db(double wavelength, double distance) {
    if (!(distance > 0.0)) throw DomainError("fspl_db: distance must be positive");
    if (!(wavelength > 0.0)) throw DomainError("fspl_db: wavelength must be positive");
    return -20.0 * std::log10(wavelength / (4.0 * pi * distance));
}

double received_snr_db(const LinkBudget& budget, double ris_gain_db, double path_loss_db) {
    return budget.tx_power_dbm + budget.tx_antenna_gain_db + budget.tx_link_gain_db + ris_gain_db +
           budget.rx_antenna_gain_db + budget.rx_link_gain_db - path_loss_db +
           budget.snr_calibration_db - budget.noise_power_dbm;
}

double capacity_bps_hz(std::span<const double> snr_db) {
    double total = 0.0;
    for (double s : snr_db) total += std::log2(1.0 + std::pow(10.0, s / 10.0));
    return total;
}

double capacity_bps_hz(double snr_db, int subcarriers) {
    if (subcarriers < 1) throw DomainError("capacity: subcarrier count must be >= 1");
    return subcarriers * std::log2(1.0 + std::pow(10.0, snr_db / 10.0));
}

}  // namespace ristrack
