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

#include "ristrack/geometry.hpp"

#include <cmath>

#include "ristrack/errors.hpp"

namespace ristrack {

double wrap_phase(double angle) noexcept {
    double wrapped = std::fmod(angle + pi, 2.0 * pi);
    if (wrapped < 0.0) wrapped += 2.0 * pi;
    wrapped -= pi;
    // fmod rounding can land exactly on +pi
    if (wrapped >= pi) wrapped -= 2.0 * pi;
    return wrapped;
}

void RisGeometry::validate() const {
    if (rows < 1 || cols < 1) throw DomainError("geometry: rows and cols must be >= 1");
    if (!(spacing_over_lambda > 0.0) || !std::isfinite(spacing_over_lambda))
        throw DomainError("geometry: element spacing must be positive");
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
        throw DomainError("geometry: frequency must be positive");
}

Direction direction_from_position(const Position& p, FieldRequirement field) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
        throw DomainError("direction_from_position: non-finite coordinate");
    if (p.x == 0.0 && p.y == 0.0 && p.z == 0.0)
        throw DomainError("direction_from_position: position is the origin");
    if (p.z < 0.0 || (field == FieldRequirement::front && p.z <= 0.0))
        throw OutOfFieldError("direction_from_position: position is behind the surface");

    const double radial = std::sqrt(p.x * p.x + p.z * p.z);
    Direction dir;
    if (p.y > 0.0) {
        dir.theta = std::atan(radial / p.y);
    } else if (p.y < 0.0) {
        dir.theta = pi + std::atan(radial / p.y);
    } else {
        dir.theta = pi / 2;
    }

    if (p.z > 0.0) {
        dir.phi = std::atan(p.x / p.z);
    } else if (p.x > 0.0) {
        dir.phi = pi / 2;
    } else if (p.x < 0.0) {
        dir.phi = -pi / 2;
    } else {
        dir.phi = 0.0;
    }
    return dir;
}

Position position_from_direction(const Direction& dir, double range) {
    if (!(range > 0.0)) throw DomainError("position_from_direction: range must be positive");
    const double s = std::sin(dir.theta);
    return {range * s * std::sin(dir.phi), range * std::cos(dir.theta),
            range * s * std::cos(dir.phi)};
}

double angular_distance(const Direction& a, const Direction& b) noexcept {
    const Position u = position_from_direction(a, 1.0);
    const Position v = position_from_direction(b, 1.0);
    const double cx = u.y * v.z - u.z * v.y;
    const double cy = u.z * v.x - u.x * v.z;
    const double cz = u.x * v.y - u.y * v.x;
    const double dot = u.x * v.x + u.y * v.y + u.z * v.z;
    return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
}

}  // namespace ristrack
