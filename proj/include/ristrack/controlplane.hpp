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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ristrack/errors.hpp"

namespace ristrack {

// Wire format of a control frame:
//
//   +------+--------+-------------+-----------+-------+
//   | 0xA5 | opcode | length (BE) |  payload  | crc-8 |
//   +------+--------+-------------+-----------+-------+
//     1       1          2          length       1
//
// The CRC is CRC-8 (polynomial 0x07, init 0x00, no reflection) over the
// opcode, length and payload bytes.

inline constexpr std::uint8_t frame_sof = 0xA5;
inline constexpr std::size_t frame_overhead = 5;
inline constexpr std::size_t max_payload = 0xFFFF;

enum class Opcode : std::uint8_t {
    index = 0x01,     // payload: 2-byte big-endian codebook index
    dynamic = 0x02,   // payload: one packed codeword
    download = 0x03,  // payload: 2-byte count + count packed codewords
};

const char* opcode_name(Opcode op) noexcept;

enum class FrameErrc {
    bad_sof,
    length_mismatch,
    crc_mismatch,
    unknown_opcode,
    index_out_of_range,
    payload_size,
    flash_capacity,
};

const char* frame_errc_name(FrameErrc code) noexcept;

class FrameError : public Error {
  public:
    FrameError(FrameErrc code, const std::string& detail);
    FrameErrc code() const noexcept { return code_; }

  private:
    FrameErrc code_;
};

struct ControlFrame {
    Opcode opcode = Opcode::index;
    std::vector<std::uint8_t> payload;

    bool operator==(const ControlFrame&) const = default;
};

std::uint8_t crc8(std::span<const std::uint8_t> bytes) noexcept;

std::vector<std::uint8_t> encode_frame(Opcode opcode, std::span<const std::uint8_t> payload);
std::vector<std::uint8_t> encode_frame(const ControlFrame& frame);

/// Checks, in order: SOF, length field against the byte count, CRC, opcode.
ControlFrame decode_frame(std::span<const std::uint8_t> bytes);

/// "A5 01 00 02 00 0C 5B" style dump, and its inverse. Parsing accepts any
/// whitespace between byte pairs and throws ConfigError on bad digits.
std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> parse_hex(std::string_view text);

struct TimingModel {
    double serial_baud = 115200.0;
    int wire_bits_per_byte = 10;  // 8N1
    int inter_chip_bits_per_clock = 16;
    double inter_chip_clock_hz = 1e8;
    double refresh_settle = 85e-6;  // seconds

    void validate() const;
    double inter_chip_peak_bps() const noexcept { return inter_chip_bits_per_clock * inter_chip_clock_hz; }
};

/// Board layout. The master chip drives the first half of the rows, the
/// slave the rest.
struct BoardConfig {
    int rows = 20;
    int cols = 20;
    std::size_t flash_capacity = 1024;

    int bits() const noexcept { return rows * cols; }
    std::size_t bytes_per_codeword() const noexcept { return (static_cast<std::size_t>(bits()) + 7) / 8; }
    int master_rows() const noexcept { return (rows + 1) / 2; }
    int slave_bits() const noexcept { return (rows - master_rows()) * cols; }
};

/// One bit per element (0 or 1), row-major, row 1 first.
using BitVector = std::vector<std::uint8_t>;

/// MSB-first packing: element 0 is bit 7 of byte 0.
std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits);
BitVector unpack_bits(std::span<const std::uint8_t> bytes, std::size_t bit_count);

struct BoardState {
    BoardConfig config;
    std::vector<BitVector> flash;
    BitVector active;
    double last_refresh_latency = 0.0;

    explicit BoardState(BoardConfig cfg = {});
};

/// Applies a decoded frame. Returns the refresh latency in seconds: serial
/// transfer of the whole frame, inter-chip transfer of the slave half and
/// the settle time. The board is unchanged if the frame is rejected.
double apply_frame(BoardState& board, const ControlFrame& frame, const TimingModel& timing);

std::pair<BitVector, BitVector> split_master_slave(std::span<const std::uint8_t> bits, const BoardConfig& cfg);
BitVector join_master_slave(std::span<const std::uint8_t> master, std::span<const std::uint8_t> slave);

ControlFrame make_index_frame(std::uint16_t index);
ControlFrame make_dynamic_frame(std::span<const std::uint8_t> bits);
ControlFrame make_download_frame(std::span<const BitVector> codewords);

}  // namespace ristrack
