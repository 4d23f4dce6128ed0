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

#include "ristrack/vision.hpp"

#include <algorithm>
#include <cmath>

#include "ristrack/errors.hpp"
#include "ristrack/random.hpp"

namespace ristrack {

void StereoRig::validate() const {
    if (!(focal_px > 0.0)) throw DomainError("stereo rig: focal length must be positive");
    if (!(baseline > 0.0)) throw DomainError("stereo rig: baseline must be positive");
    if (image_width < 1 || image_height < 1) throw DomainError("stereo rig: empty image");
    if (!inside(left_principal) || !inside(right_principal))
        throw DomainError("stereo rig: principal point outside the image");
}

bool StereoRig::inside(const PixelPoint& p) const noexcept {
    return p.x >= 0.0 && p.x <= image_width && p.y >= 0.0 && p.y <= image_height;
}

void DetectorOracle::validate() const {
    if (!(pixel_noise_sigma >= 0.0)) throw DomainError("detector: noise sigma must be >= 0");
    if (!(miss_probability >= 0.0 && miss_probability <= 1.0))
        throw DomainError("detector: miss probability must lie in [0, 1]");
    if (!(latency >= 0.0)) throw DomainError("detector: latency must be >= 0");
    if (!(box_width > 0.0) || !(box_height > 0.0)) throw DomainError("detector: box size must be positive");
}

StereoObservation project(const StereoRig& rig, const Position& p) {
    if (!(p.z > 0.0)) throw BehindCameraError("project: point is not in front of the rig");
    const double half_b = rig.baseline / 2.0;
    StereoObservation obs;
    obs.left = {rig.left_principal.x + rig.focal_px * (p.x + half_b) / p.z,
                rig.left_principal.y - rig.focal_px * p.y / p.z};
    obs.right = {rig.right_principal.x + rig.focal_px * (p.x - half_b) / p.z,
                 rig.right_principal.y - rig.focal_px * p.y / p.z};
    if (!rig.inside(obs.left) || !rig.inside(obs.right))
        throw OutOfViewError("project: point falls outside the image");
    return obs;
}

double disparity(const StereoObservation& obs, const StereoRig& rig) noexcept {
    return (obs.left.x - rig.left_principal.x) + (rig.right_principal.x - obs.right.x);
}

double depth(const StereoRig& rig, double disparity) {
    if (!(disparity > 0.0)) throw NoDepthError("depth: disparity must be positive");
    return rig.focal_px * rig.baseline / disparity;
}

DirectionEstimate estimate_direction(const StereoRig& rig, const DetectionBox& left, double depth) {
    if (!(depth > 0.0)) throw DomainError("estimate_direction: depth must be positive");
    const double z = depth;
    Position p{(left.center.x - rig.left_principal.x) * z / rig.focal_px - rig.baseline / 2.0,
               -(left.center.y - rig.left_principal.y) * z / rig.focal_px, z};
    return {direction_from_position(p, FieldRequirement::front), p};
}

DirectionEstimate estimate_direction(const StereoRig& rig, const DetectionBox& left,
                                     const DetectionBox& right, double depth) {
    if (!(depth > 0.0)) throw DomainError("estimate_direction: depth must be positive");
    const double z = depth;
    const double x_left = (left.center.x - rig.left_principal.x) * z / rig.focal_px - rig.baseline / 2.0;
    const double x_right = (right.center.x - rig.right_principal.x) * z / rig.focal_px + rig.baseline / 2.0;
    const double y_left = -(left.center.y - rig.left_principal.y) * z / rig.focal_px;
    const double y_right = -(right.center.y - rig.right_principal.y) * z / rig.focal_px;
    Position p{(x_left + x_right) / 2.0, (y_left + y_right) / 2.0, z};
    return {direction_from_position(p, FieldRequirement::front), p};
}

std::optional<DetectionPair> detect(const DetectorOracle& oracle, const StereoRig& rig,
                                    const StereoObservation& truth, std::uint64_t tick) {
    std::mt19937_64 rng = make_rng(oracle.seed, Stream::detection, tick);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    // The miss draw is always consumed so noise draws do not shift with it.
    const bool missed = uniform(rng) < oracle.miss_probability;

    auto noisy = [&](const PixelPoint& p) {
        PixelPoint q = p;
        if (oracle.pixel_noise_sigma > 0.0) {
            std::normal_distribution<double> noise(0.0, oracle.pixel_noise_sigma);
            q.x += noise(rng);
            q.y += noise(rng);
        }
        q.x = std::clamp(q.x, 0.0, static_cast<double>(rig.image_width));
        q.y = std::clamp(q.y, 0.0, static_cast<double>(rig.image_height));
        return DetectionBox{q, oracle.box_width, oracle.box_height, 1.0};
    };
    DetectionBox left = noisy(truth.left);
    DetectionBox right = noisy(truth.right);
    if (missed) return std::nullopt;
    return DetectionPair{left, right};
}

}  // namespace ristrack
