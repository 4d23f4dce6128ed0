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

#include "ristrack/controlplane.hpp"

#include <cctype>
#include <cmath>

#include <fmt/format.h>

namespace ristrack {

const char* opcode_name(Opcode op) noexcept {
    switch (op) {
        case Opcode::index: return "index";
        case Opcode::dynamic: return "dynamic";
        case Opcode::download: return "download";
    }
    return "unknown";
}

const char* frame_errc_name(FrameErrc code) noexcept {
    switch (code) {
        case FrameErrc::bad_sof: return "BadSof";
        case FrameErrc::length_mismatch: return "LengthMismatch";
        case FrameErrc::crc_mismatch: return "CrcMismatch";
        case FrameErrc::unknown_opcode: return "UnknownOpcode";
        case FrameErrc::index_out_of_range: return "IndexOutOfRange";
        case FrameErrc::payload_size: return "PayloadSize";
        case FrameErrc::flash_capacity: return "FlashCapacity";
    }
    return "Unknown";
}

FrameError::FrameError(FrameErrc code, const std::string& detail)
    : Error(fmt::format("{}: {}", frame_errc_name(code), detail)), code_(code) {}

std::uint8_t crc8(std::span<const std::uint8_t> bytes) noexcept {
    std::uint8_t crc = 0x00;
    for (std::uint8_t b : bytes) {
        crc ^= b;
        for (int i = 0; i < 8; ++i) crc = (crc & 0x80) ? static_cast<std::uint8_t>((crc << 1) ^ 0x07) : static_cast<std::uint8_t>(crc << 1);
    }
    return crc;
}

std::vector<std::uint8_t> encode_frame(Opcode opcode, std::span<const std::uint8_t> payload) {
    if (payload.size() > max_payload)
        throw FrameError(FrameErrc::length_mismatch, fmt::format("payload of {} bytes exceeds 65535", payload.size()));
    std::vector<std::uint8_t> out;
    out.reserve(payload.size() + frame_overhead);
    out.push_back(frame_sof);
    out.push_back(static_cast<std::uint8_t>(opcode));
    out.push_back(static_cast<std::uint8_t>(payload.size() >> 8));
    out.push_back(static_cast<std::uint8_t>(payload.size() & 0xFF));
    out.insert(out.end(), payload.begin(), payload.end());
    out.push_back(crc8(std::span(out).subspan(1)));
    return out;
}

std::vector<std::uint8_t> encode_frame(const ControlFrame& frame) {
    return encode_frame(frame.opcode, frame.payload);
}

ControlFrame decode_frame(std::span<const std::uint8_t> bytes) {
    if (bytes.empty() || bytes[0] != frame_sof) throw FrameError(FrameErrc::bad_sof, "missing 0xA5 start byte");
    if (bytes.size() < frame_overhead)
        throw FrameError(FrameErrc::length_mismatch, fmt::format("frame of {} bytes is truncated", bytes.size()));
    const std::size_t length = (static_cast<std::size_t>(bytes[2]) << 8) | bytes[3];
    if (bytes.size() != length + frame_overhead)
        throw FrameError(FrameErrc::length_mismatch,
                         fmt::format("length field says {} payload bytes, frame carries {}", length,
                                     bytes.size() - frame_overhead));
    const std::uint8_t expected = crc8(bytes.subspan(1, length + 3));
    if (bytes.back() != expected)
        throw FrameError(FrameErrc::crc_mismatch, fmt::format("crc {:02X}, expected {:02X}", bytes.back(), expected));
    const std::uint8_t op = bytes[1];
    if (op < 0x01 || op > 0x03) throw FrameError(FrameErrc::unknown_opcode, fmt::format("opcode {:02X}", op));
    return {static_cast<Opcode>(op), {bytes.begin() + 4, bytes.begin() + 4 + static_cast<std::ptrdiff_t>(length)}};
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    std::string out;
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        if (i) out += ' ';
        out += fmt::format("{:02X}", bytes[i]);
    }
    return out;
}

std::vector<std::uint8_t> parse_hex(std::string_view text) {
    std::string digits;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (!std::isxdigit(static_cast<unsigned char>(c))) throw ConfigError(fmt::format("invalid hex digit '{}'", c));
        digits += c;
    }
    if (digits.size() % 2) throw ConfigError("hex string has an odd number of digits");
    std::vector<std::uint8_t> out;
    out.reserve(digits.size() / 2);
    for (std::size_t i = 0; i < digits.size(); i += 2)
        out.push_back(static_cast<std::uint8_t>(std::stoi(digits.substr(i, 2), nullptr, 16)));
    return out;
}

void TimingModel::validate() const {
    if (!(serial_baud > 0.0) || wire_bits_per_byte < 1 || inter_chip_bits_per_clock < 1 ||
        !(inter_chip_clock_hz > 0.0) || !(refresh_settle > 0.0))
        throw DomainError("timing model: all parameters must be positive");
}

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return out;
}

BitVector unpack_bits(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
    if (bytes.size() * 8 < bit_count) throw ShapeError("not enough bytes to unpack");
    BitVector out(bit_count);
    for (std::size_t i = 0; i < bit_count; ++i) out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
    return out;
}

BoardState::BoardState(BoardConfig cfg) : config(cfg), active(static_cast<std::size_t>(cfg.bits()), 0) {}

double apply_frame(BoardState& board, const ControlFrame& frame, const TimingModel& timing) {
    const BoardConfig& cfg = board.config;
    const std::size_t cw_bytes = cfg.bytes_per_codeword();
    const auto& p = frame.payload;

    switch (frame.opcode) {
        case Opcode::index: {
            if (p.size() != 2)
                throw FrameError(FrameErrc::payload_size, fmt::format("index payload is {} bytes, expected 2", p.size()));
            const std::size_t index = (static_cast<std::size_t>(p[0]) << 8) | p[1];
            if (index >= board.flash.size())
                throw FrameError(FrameErrc::index_out_of_range,
                                 fmt::format("index {} with {} codewords in flash", index, board.flash.size()));
            board.active = board.flash[index];
            break;
        }
        case Opcode::dynamic: {
            if (p.size() != cw_bytes)
                throw FrameError(FrameErrc::payload_size,
                                 fmt::format("dynamic payload is {} bytes, expected {}", p.size(), cw_bytes));
            board.active = unpack_bits(p, static_cast<std::size_t>(cfg.bits()));
            break;
        }
        case Opcode::download: {
            if (p.size() < 2) throw FrameError(FrameErrc::payload_size, "download payload lacks the count");
            const std::size_t count = (static_cast<std::size_t>(p[0]) << 8) | p[1];
            if (p.size() != 2 + count * cw_bytes)
                throw FrameError(FrameErrc::payload_size,
                                 fmt::format("download of {} codewords needs {} bytes, got {}", count,
                                             2 + count * cw_bytes, p.size()));
            if (count > cfg.flash_capacity)
                throw FrameError(FrameErrc::flash_capacity,
                                 fmt::format("{} codewords exceed flash capacity {}", count, cfg.flash_capacity));
            std::vector<BitVector> flash;
            flash.reserve(count);
            for (std::size_t i = 0; i < count; ++i)
                flash.push_back(unpack_bits(std::span(p).subspan(2 + i * cw_bytes, cw_bytes),
                                            static_cast<std::size_t>(cfg.bits())));
            board.flash = std::move(flash);
            break;
        }
    }

    const double frame_bits = static_cast<double>(p.size() + frame_overhead) * timing.wire_bits_per_byte;
    const double serial = frame_bits / timing.serial_baud;
    const double inter_chip =
        static_cast<double>(cfg.slave_bits()) / timing.inter_chip_bits_per_clock / timing.inter_chip_clock_hz;
    board.last_refresh_latency = serial + inter_chip + timing.refresh_settle;
    return board.last_refresh_latency;
}

std::pair<BitVector, BitVector> split_master_slave(std::span<const std::uint8_t> bits, const BoardConfig& cfg) {
    if (bits.size() != static_cast<std::size_t>(cfg.bits()))
        throw ShapeError(fmt::format("expected {} bits, got {}", cfg.bits(), bits.size()));
    const auto cut = static_cast<std::ptrdiff_t>(cfg.master_rows()) * cfg.cols;
    return {BitVector(bits.begin(), bits.begin() + cut), BitVector(bits.begin() + cut, bits.end())};
}

BitVector join_master_slave(std::span<const std::uint8_t> master, std::span<const std::uint8_t> slave) {
    BitVector out(master.begin(), master.end());
    out.insert(out.end(), slave.begin(), slave.end());
    return out;
}

ControlFrame make_index_frame(std::uint16_t index) {
    return {Opcode::index, {static_cast<std::uint8_t>(index >> 8), static_cast<std::uint8_t>(index & 0xFF)}};
}

ControlFrame make_dynamic_frame(std::span<const std::uint8_t> bits) {
    return {Opcode::dynamic, pack_bits(bits)};
}

ControlFrame make_download_frame(std::span<const BitVector> codewords) {
    if (codewords.size() > 0xFFFF) throw FrameError(FrameErrc::flash_capacity, "too many codewords for one download");
    ControlFrame frame{Opcode::download, {static_cast<std::uint8_t>(codewords.size() >> 8),
                                          static_cast<std::uint8_t>(codewords.size() & 0xFF)}};
    for (const BitVector& cw : codewords) {
        const auto packed = pack_bits(cw);
        frame.payload.insert(frame.payload.end(), packed.begin(), packed.end());
    }
    return frame;
}

}  // namespace ristrack
