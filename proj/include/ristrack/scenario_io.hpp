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

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "ristrack/simulator.hpp"

namespace ristrack {

/// Everything a scenario file can carry: the scenario itself plus the
/// optional `compare` and `breakdown` sections. Angles are in degrees in the
/// file and radians here.
struct ScenarioFile {
    Scenario scenario;
    std::vector<PolicyKind> compare_policies{PolicyKind::vision, PolicyKind::sweep, PolicyKind::genie};
    std::optional<double> compare_threshold_db;
    std::vector<double> breakdown_speeds_deg_s{28.0, 60.0, 100.0, 150.0, 200.0};
    double breakdown_deficit_db = 3.0;
    double breakdown_max_loss_fraction = 0.10;
};

/// Parses a scenario file. Unknown keys and inconsistent values raise
/// ParseError/ConfigError before any simulation work. `base_dir` resolves a
/// relative "codebook_file".
ScenarioFile parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});
ScenarioFile load_scenario(const std::filesystem::path& path);

/// Codebook generation request: geometry, incident model and angle grids.
struct CodebookRequest {
    RisGeometry geometry;
    IncidentModel incident;
    std::vector<double> theta_grid;
    std::vector<double> phi_grid;
    std::optional<std::filesystem::path> output;
};

CodebookRequest parse_codebook_request(std::string_view text);

/// Pattern request: which codebook, which cut, which entries.
struct PatternRequest {
    std::optional<std::filesystem::path> codebook_file;
    std::optional<CodebookRequest> codebook;
    double theta = pi / 2;
    std::vector<double> phi_axis;
    ElementPattern element;
    std::vector<std::size_t> entries;  // empty = all
};

PatternRequest parse_pattern_request(std::string_view text, const std::filesystem::path& base_dir = {});

}  // namespace ristrack
