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

#include <cstddef>
#include <variant>
#include <vector>

#include "ristrack/geometry.hpp"
#include "ristrack/matrix.hpp"
#include "ristrack/wavefield.hpp"

namespace ristrack {

/// Feed horn on the boresight axis at `feed_distance` meters; spherical
/// wavefront across the aperture.
struct NearFieldFeed {
    double feed_distance = 0.0;

    bool operator==(const NearFieldFeed&) const = default;
};

/// Plane wave arriving from `tx`.
struct FarFieldPlane {
    Direction tx;

    bool operator==(const FarFieldPlane&) const = default;
};

using IncidentModel = std::variant<NearFieldFeed, FarFieldPlane>;

// Bistate modulation phases. Bit "0" (reverse bias) is +pi/2, bit "1" is -pi/2.
inline constexpr double phase_state_zero = pi / 2;
inline constexpr double phase_state_one = -pi / 2;

/// Incident phase at element (m, n), 1-based, for a centered feed.
double incident_phase_near(const RisGeometry& geom, double feed_distance, int m, int n);
/// Incident phase at element (m, n), 1-based, for a plane wave from `tx`.
double incident_phase_far(const RisGeometry& geom, const Direction& tx, int m, int n);
double incident_phase(const RisGeometry& geom, const IncidentModel& model, int m, int n);
Matrix<double> incident_phases(const RisGeometry& geom, const IncidentModel& model);

/// Continuous modulation phase that brings element (m, n) into phase
/// towards `desired`, wrapped to [-pi, pi).
double optimal_phase(const RisGeometry& geom, const Direction& desired, double beta, int m, int n);

/// One-bit quantizer: [0, pi) -> +pi/2, [-pi, 0) -> -pi/2 after wrapping.
double quantize_1bit(double alpha) noexcept;

struct Codeword {
    BitMatrix bits;
    Direction desired;
    IncidentModel incident;

    bool operator==(const Codeword&) const = default;
};

/// Modulation phases from the bits and incident phases from the model.
Matrix<ElementState> element_states(const RisGeometry& geom, const BitMatrix& bits,
                                    const IncidentModel& incident);
Matrix<ElementState> element_states(const RisGeometry& geom, const Codeword& cw);

Codeword generate_codeword(const RisGeometry& geom, const IncidentModel& incident,
                           const Direction& desired);

struct Codebook {
    RisGeometry geometry;
    IncidentModel incident;
    std::vector<double> theta_grid;  // radians, strictly increasing
    std::vector<double> phi_grid;    // radians, strictly increasing
    std::vector<Codeword> entries;   // row-major over (theta, phi)

    std::size_t size() const noexcept { return entries.size(); }
};

Codebook generate_codebook(const RisGeometry& geom, const IncidentModel& incident,
                           const std::vector<double>& theta_grid,
                           const std::vector<double>& phi_grid);

/// Uniform grid start, start + step, ... up to stop inclusive (with a small
/// tolerance so decimal steps land on the end point).
std::vector<double> linear_grid(double start, double stop, double step);

struct CodebookMatch {
    std::size_t index = 0;
    double distance = 0.0;  // radians
};

/// Entry whose desired direction is closest on the sphere; ties go to the
/// lower index.
CodebookMatch nearest_codeword(const Codebook& book, const Direction& estimate);

/// Brute-force search over all 2^(rows*cols) bit matrices for the largest
/// |E| at `desired`. Ties keep the lexicographically smallest bit string
/// (row m = 1 first, "0" < "1").
Codeword exhaustive_best_codeword(const RisGeometry& geom, const IncidentModel& incident,
                                  const Direction& desired, int max_elements = 16);

/// Per-entry complex weights cached once, so evaluating every entry towards
/// one direction costs rows + cols exponentials.
class CodebookResponse {
  public:
    CodebookResponse(const Codebook& book, ElementPattern pattern = {});

    std::size_t size() const noexcept { return weights_.size(); }
    const RisGeometry& geometry() const noexcept { return geometry_; }

    double magnitude(std::size_t index, const Direction& dir) const;
    std::vector<double> magnitudes(const Direction& dir) const;

    /// Index maximizing |E| at `dir`; ties go to the lower index.
    std::size_t best(const Direction& dir) const;

  private:
    RisGeometry geometry_;
    ElementPattern pattern_;
    std::vector<std::vector<cd>> weights_;
};

}  // namespace ristrack
