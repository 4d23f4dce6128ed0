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

#pragma once

#include <numbers>

namespace ristrack {

inline constexpr double pi = std::numbers::pi;
inline constexpr double speed_of_light = 299792458.0;

constexpr double deg2rad(double deg) noexcept { return deg * pi / 180.0; }
constexpr double rad2deg(double rad) noexcept { return rad * 180.0 / pi; }

/// Wraps an angle into [-pi, pi).
double wrap_phase(double angle) noexcept;

/// Pitch/azimuth pair in the surface frame. theta is measured from the +y
/// (vertical array) axis, phi in the x-z plane from the +z boresight.
struct Direction {
    double theta = pi / 2;
    double phi = 0.0;

    bool operator==(const Direction&) const = default;
};

/// Cartesian point in meters: z along the boresight normal, y along the
/// vertical array axis (rows), x along the horizontal array axis (columns).
struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Physical aperture of the surface: rows x cols elements with uniform
/// spacing. Stored as spacing/wavelength ratio and carrier frequency, which
/// is also how codebook files describe it.
struct RisGeometry {
    int rows = 20;
    int cols = 20;
    double spacing_over_lambda = 0.25;
    double frequency_hz = 5.4e9;

    double wavelength() const noexcept { return speed_of_light / frequency_hz; }
    double spacing() const noexcept { return spacing_over_lambda * wavelength(); }
    int elements() const noexcept { return rows * cols; }

    /// Throws DomainError when any invariant is broken.
    void validate() const;

    bool operator==(const RisGeometry&) const = default;
};

enum class FieldRequirement {
    half_space,  // z >= 0 accepted (grazing directions allowed)
    front,       // z > 0 required
};

/// theta from the two-branch arctangent on the sign of y (theta = pi/2 on
/// the y = 0 plane), phi = arctan(x / z).
Direction direction_from_position(const Position& p,
                                  FieldRequirement field = FieldRequirement::half_space);

Position position_from_direction(const Direction& dir, double range);

/// Great-circle angle between the unit vectors of two directions.
double angular_distance(const Direction& a, const Direction& b) noexcept;

}  // namespace ristrack
