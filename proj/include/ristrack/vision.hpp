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

#include <cstdint>
#include <optional>
#include <utility>

#include "ristrack/geometry.hpp"

namespace ristrack {

struct PixelPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Stereo pair mounted at the surface center. The left camera sits at
/// x = -b/2 and the right one at x = +b/2; image y grows downward.
struct StereoRig {
    double focal_px = 700.0;
    double baseline = 0.12;
    int image_width = 1280;
    int image_height = 720;
    PixelPoint left_principal{640.0, 360.0};
    PixelPoint right_principal{640.0, 360.0};

    void validate() const;
    bool inside(const PixelPoint& p) const noexcept;
};

struct DetectionBox {
    PixelPoint center;
    double width = 40.0;
    double height = 80.0;
    double confidence = 1.0;
};

struct StereoObservation {
    PixelPoint left;
    PixelPoint right;
};

/// Stand-in for the object detector: true pixel positions plus Gaussian
/// noise, with random misses. Draws depend only on (seed, tick).
struct DetectorOracle {
    double pixel_noise_sigma = 0.0;
    double miss_probability = 0.0;
    double latency = 0.085;  // seconds
    std::uint64_t seed = 0;
    double box_width = 40.0;
    double box_height = 80.0;

    void validate() const;
};

/// Pinhole projection of a point in the surface frame into both images.
StereoObservation project(const StereoRig& rig, const Position& p);

/// (x1 - xL) + (xR - x2), in pixels.
double disparity(const StereoObservation& obs, const StereoRig& rig) noexcept;

/// f b / disparity. Throws NoDepthError for disparity <= 0.
double depth(const StereoRig& rig, double disparity);

struct DirectionEstimate {
    Direction direction;
    Position position;
};

/// Back-projects a single left-image detection at `depth` and shifts it by
/// the half baseline into the rig frame.
DirectionEstimate estimate_direction(const StereoRig& rig, const DetectionBox& left, double depth);

/// Back-projects both detections and averages them, which cancels the
/// half-baseline offsets of the two cameras.
DirectionEstimate estimate_direction(const StereoRig& rig, const DetectionBox& left,
                                     const DetectionBox& right, double depth);

using DetectionPair = std::pair<DetectionBox, DetectionBox>;

std::optional<DetectionPair> detect(const DetectorOracle& oracle, const StereoRig& rig,
                                    const StereoObservation& truth, std::uint64_t tick);

}  // namespace ristrack
