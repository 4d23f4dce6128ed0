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

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "ristrack/geometry.hpp"
#include "ristrack/matrix.hpp"

namespace ristrack {

using cd = std::complex<double>;

/// Modulation (A, alpha) and incident wave (B, beta) at one element.
struct ElementState {
    double mod_amplitude = 1.0;
    double mod_phase = 0.0;
    double inc_amplitude = 1.0;
    double inc_phase = 0.0;
};

/// Unit pattern f(theta, phi) = max(sin(theta) cos(phi), 0)^q.
/// q = 0 is isotropic, including behind the surface.
struct ElementPattern {
    double exponent = 0.0;

    double operator()(const Direction& dir) const;
};

/// Geometric phase of element (m, n), both counted from one, towards `dir`:
/// k d ((M+1)/2 - m) cos(theta) + k d (n - (1+N)/2) sin(theta) sin(phi).
double steering_phase(const RisGeometry& geom, const Direction& dir, int m, int n) noexcept;

/// Complex far-field sum over all elements towards `dir`.
cd scattering_field(const RisGeometry& geom, const Matrix<ElementState>& states,
                    const ElementPattern& pattern, const Direction& dir);

/// Per-element complex weights A B exp(j(alpha + beta)), row-major. Reusing
/// them avoids recomputing the same exponentials for every direction.
std::vector<cd> element_weights(const Matrix<ElementState>& states);

/// Same sum as scattering_field for precomputed weights.
cd array_factor(const RisGeometry& geom, std::span<const cd> weights,
                const ElementPattern& pattern, const Direction& dir);

/// 20 log10(|E| / |E|max). The proportionality constant between gain and
/// |E|^2 cancels in the ratio.
double gain_db(double magnitude, double reference);

/// Azimuth cut at a fixed pitch.
struct PatternCut {
    double theta = pi / 2;
    std::vector<double> phi;
    std::vector<double> magnitude;
    std::vector<double> gain_db;
};

/// Full theta x phi grid. gain_db is normalized to the grid maximum.
struct PatternGrid {
    std::vector<double> theta_axis;
    std::vector<double> phi_axis;
    Matrix<double> magnitude;
    Matrix<double> gain_db;
};

PatternCut pattern_cut(const RisGeometry& geom, const Matrix<ElementState>& states,
                       const ElementPattern& pattern, double theta,
                       std::span<const double> phi_axis);

PatternGrid pattern_grid(const RisGeometry& geom, const Matrix<ElementState>& states,
                         const ElementPattern& pattern, std::span<const double> theta_axis,
                         std::span<const double> phi_axis);

struct MainLobe {
    double peak = 0.0;               // radians
    double half_power_width = 0.0;   // radians; lower bound when censored
    double lower_edge = 0.0;
    double upper_edge = 0.0;
    bool censored = false;           // -3 dB crossing missing on at least one side
};

/// Peak of the cut (ties go to the smaller phi) and the contiguous span where
/// gain >= -3 dB, with crossings interpolated linearly in dB.
MainLobe main_lobe(const PatternCut& cut);

void write_pattern_csv(std::ostream& out, const PatternCut& cut);

/// Link constants, all in dB/dBm. The scenario-level calibration offset
/// absorbs unreported hardware terms.
struct LinkBudget {
    double tx_power_dbm = -20.0;  // per subcarrier
    double tx_antenna_gain_db = 7.0;
    double rx_antenna_gain_db = 7.0;
    double tx_link_gain_db = 30.0;
    double rx_link_gain_db = 22.0;
    double noise_power_dbm = -90.0;
    int subcarriers = 52;
    double snr_calibration_db = 0.0;

    void validate() const;
};

/// Free-space path loss as a positive dB figure.
double fspl_db(double wavelength, double distance);

double received_snr_db(const LinkBudget& budget, double ris_gain_db, double path_loss_db);

/// Sum over subcarriers of log2(1 + snr).
double capacity_bps_hz(std::span<const double> snr_db);
double capacity_bps_hz(double snr_db, int subcarriers);

}  // namespace ristrack
