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

#include "ristrack/codebook.hpp"

#include <cmath>
#include <cstdint>

#include <fmt/format.h>

#include "ristrack/errors.hpp"

namespace ristrack {

namespace {

void check_index(const RisGeometry& geom, int m, int n) {
    if (m < 1 || m > geom.rows || n < 1 || n > geom.cols)
        throw DomainError(fmt::format("element ({}, {}) outside a {}x{} surface", m, n, geom.rows, geom.cols));
}

void check_grid(const std::vector<double>& grid, const char* name) {
    if (grid.empty()) throw DomainError(fmt::format("codebook {} grid is empty", name));
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw DomainError(fmt::format("codebook {} grid is not strictly increasing", name));
}

}  // namespace

double incident_phase_near(const RisGeometry& geom, double feed_distance, int m, int n) {
    check_index(geom, m, n);
    if (!(feed_distance > 0.0)) throw DomainError("feed distance must be positive");
    const double k = 2.0 * pi / geom.wavelength();
    const double d = geom.spacing();
    const double dy = d * ((geom.rows + 1) / 2.0 - m);
    const double dx = d * (n - (1 + geom.cols) / 2.0);
    return wrap_phase(k * feed_distance - k * std::sqrt(dy * dy + dx * dx + feed_distance * feed_distance));
}

double incident_phase_far(const RisGeometry& geom, const Direction& tx, int m, int n) {
    check_index(geom, m, n);
    return wrap_phase(steering_phase(geom, tx, m, n));
}

double incident_phase(const RisGeometry& geom, const IncidentModel& model, int m, int n) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, NearFieldFeed>)
                return incident_phase_near(geom, v.feed_distance, m, n);
            else
                return incident_phase_far(geom, v.tx, m, n);
        },
        model);
}

Matrix<double> incident_phases(const RisGeometry& geom, const IncidentModel& model) {
    geom.validate();
    Matrix<double> beta(geom.rows, geom.cols);
    for (int m = 1; m <= geom.rows; ++m)
        for (int n = 1; n <= geom.cols; ++n) beta(m - 1, n - 1) = incident_phase(geom, model, m, n);
    return beta;
}

double optimal_phase(const RisGeometry& geom, const Direction& desired, double beta, int m, int n) {
    check_index(geom, m, n);
    const double alpha = wrap_phase(-steering_phase(geom, desired, m, n) - beta);
    // Roundoff of cos(pi/2) and similar must not flip the quantizer at zero.
    return std::abs(alpha) < 1e-12 ? 0.0 : alpha;
}

double quantize_1bit(double alpha) noexcept {
    return wrap_phase(alpha) >= 0.0 ? phase_state_zero : phase_state_one;
}

Matrix<ElementState> element_states(const RisGeometry& geom, const BitMatrix& bits,
                                    const IncidentModel& incident) {
    if (bits.rows() != static_cast<std::size_t>(geom.rows) || bits.cols() != static_cast<std::size_t>(geom.cols))
        throw ShapeError("codeword shape does not match the geometry");
    const Matrix<double> beta = incident_phases(geom, incident);
    Matrix<ElementState> states(bits.rows(), bits.cols());
    for (std::size_t r = 0; r < bits.rows(); ++r)
        for (std::size_t c = 0; c < bits.cols(); ++c) {
            ElementState& s = states(r, c);
            s.mod_phase = bits(r, c) ? phase_state_one : phase_state_zero;
            s.inc_phase = beta(r, c);
        }
    return states;
}

Matrix<ElementState> element_states(const RisGeometry& geom, const Codeword& cw) {
    return element_states(geom, cw.bits, cw.incident);
}

Codeword generate_codeword(const RisGeometry& geom, const IncidentModel& incident,
                           const Direction& desired) {
    const Matrix<double> beta = incident_phases(geom, incident);
    Codeword cw{BitMatrix(geom.rows, geom.cols), desired, incident};
    for (int m = 1; m <= geom.rows; ++m)
        for (int n = 1; n <= geom.cols; ++n) {
            const double alpha = optimal_phase(geom, desired, beta(m - 1, n - 1), m, n);
            cw.bits(m - 1, n - 1) = quantize_1bit(alpha) == phase_state_one ? 1 : 0;
        }
    return cw;
}

Codebook generate_codebook(const RisGeometry& geom, const IncidentModel& incident,
                           const std::vector<double>& theta_grid,
                           const std::vector<double>& phi_grid) {
    geom.validate();
    check_grid(theta_grid, "theta");
    check_grid(phi_grid, "phi");
    Codebook book{geom, incident, theta_grid, phi_grid, {}};
    book.entries.reserve(theta_grid.size() * phi_grid.size());
    for (double theta : theta_grid)
        for (double phi : phi_grid) book.entries.push_back(generate_codeword(geom, incident, {theta, phi}));
    return book;
}

std::vector<double> linear_grid(double start, double stop, double step) {
    if (!(step > 0.0)) throw DomainError("grid step must be positive");
    if (stop < start) throw DomainError("grid stop is below start");
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
    return grid;
}

CodebookMatch nearest_codeword(const Codebook& book, const Direction& estimate) {
    if (book.entries.empty()) throw DomainError("nearest_codeword: empty codebook");
    constexpr double tie_tolerance = 1e-12;
    CodebookMatch best{0, angular_distance(book.entries[0].desired, estimate)};
    for (std::size_t i = 1; i < book.entries.size(); ++i) {
        const double dist = angular_distance(book.entries[i].desired, estimate);
        if (dist < best.distance - tie_tolerance) best = {i, dist};
    }
    return best;
}

Codeword exhaustive_best_codeword(const RisGeometry& geom, const IncidentModel& incident,
                                  const Direction& desired, int max_elements) {
    geom.validate();
    const int count = geom.elements();
    if (count > max_elements || count > 30)
        throw RefusalError(fmt::format("exhaustive search over 2^{} codewords exceeds the limit of 2^{}",
                                       count, max_elements));

    const Matrix<double> beta = incident_phases(geom, incident);
    // Everything except the modulation phase, per element in row-major order.
    std::vector<cd> fixed(count);
    for (int m = 1; m <= geom.rows; ++m)
        for (int n = 1; n <= geom.cols; ++n) {
            const int i = (m - 1) * geom.cols + (n - 1);
            fixed[i] = std::polar(1.0, beta(m - 1, n - 1) + steering_phase(geom, desired, m, n));
        }
    const cd state_zero = std::polar(1.0, phase_state_zero);
    const cd state_one = std::polar(1.0, phase_state_one);

    // Code value c enumerates bit strings lexicographically when element 0
    // is the most significant bit.
    const std::uint32_t total = 1u << count;
    std::uint32_t best_code = 0;
    double best_mag = -1.0;
    for (std::uint32_t code = 0; code < total; ++code) {
        cd sum{0.0, 0.0};
        for (int i = 0; i < count; ++i) {
            const bool one = (code >> (count - 1 - i)) & 1u;
            sum += fixed[i] * (one ? state_one : state_zero);
        }
        const double mag = std::abs(sum);
        if (mag > best_mag * (1.0 + 1e-12) + 1e-15) {
            best_mag = mag;
            best_code = code;
        }
    }

    Codeword cw{BitMatrix(geom.rows, geom.cols), desired, incident};
    for (int i = 0; i < count; ++i)
        cw.bits(i / geom.cols, i % geom.cols) = static_cast<std::uint8_t>((best_code >> (count - 1 - i)) & 1u);
    return cw;
}

CodebookResponse::CodebookResponse(const Codebook& book, ElementPattern pattern)
    : geometry_(book.geometry), pattern_(pattern) {
    weights_.reserve(book.entries.size());
    for (const Codeword& cw : book.entries) weights_.push_back(element_weights(element_states(geometry_, cw)));
}

namespace {

std::vector<cd> steering_vector(const RisGeometry& geom, const Direction& dir) {
    const int rows = geom.rows;
    const int cols = geom.cols;
    const double kd = 2.0 * pi * geom.spacing_over_lambda;
    const double ct = std::cos(dir.theta);
    const double stsp = std::sin(dir.theta) * std::sin(dir.phi);
    std::vector<cd> steer(static_cast<std::size_t>(rows) * cols);
    for (int m = 1; m <= rows; ++m)
        for (int n = 1; n <= cols; ++n)
            steer[(m - 1) * cols + (n - 1)] = std::polar(
                1.0, kd * ((rows + 1) / 2.0 - m) * ct + kd * (n - (1 + cols) / 2.0) * stsp);
    return steer;
}

double weighted_magnitude(const std::vector<cd>& w, const std::vector<cd>& steer, double f) {
    cd sum{0.0, 0.0};
    for (std::size_t i = 0; i < steer.size(); ++i) sum += w[i] * steer[i];
    return f * std::abs(sum);
}

}  // namespace

double CodebookResponse::magnitude(std::size_t index, const Direction& dir) const {
    return weighted_magnitude(weights_.at(index), steering_vector(geometry_, dir), pattern_(dir));
}

std::vector<double> CodebookResponse::magnitudes(const Direction& dir) const {
    const std::vector<cd> steer = steering_vector(geometry_, dir);
    const double f = pattern_(dir);
    std::vector<double> out;
    out.reserve(weights_.size());
    for (const auto& w : weights_) out.push_back(weighted_magnitude(w, steer, f));
    return out;
}

std::size_t CodebookResponse::best(const Direction& dir) const {
    const std::vector<double> mags = magnitudes(dir);
    std::size_t best = 0;
    for (std::size_t i = 1; i < mags.size(); ++i)
        if (mags[i] > mags[best]) best = i;
    return best;
}

}  // namespace ristrack
