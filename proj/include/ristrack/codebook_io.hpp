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
#include <string>
#include <string_view>

#include "ristrack/codebook.hpp"

namespace ristrack {

// Codebook file layout (JSON):
//   { "M", "N", "spacing_over_lambda", "freq_hz",
//     "incident": {"type": "near", "d_feed_m"} | {"type": "far", "theta_tx_deg", "phi_tx_deg"},
//     "entries": [ {"theta_deg", "phi_deg", "bits": [M strings of N chars]} ] }
// Row m = 1 is the first string, column n = 1 its leftmost char. "0" is the
// +pi/2 state. Entries are row-major over the (theta, phi) lattice, which is
// recovered from them on load.

std::string serialize_codebook(const Codebook& book);

/// Throws ParseError naming the line (syntax errors) or field path. Nothing
/// is returned unless the whole file validates.
Codebook parse_codebook(std::string_view text);

void save_codebook(const std::filesystem::path& path, const Codebook& book);
Codebook load_codebook(const std::filesystem::path& path);

}  // namespace ristrack
