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

#include <stdexcept>
#include <string>

namespace ristrack {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

// Position that cannot be expressed in the front half-space of the surface.
class OutOfFieldError : public DomainError {
  public:
    using DomainError::DomainError;
};

class ShapeError : public Error {
  public:
    using Error::Error;
};

// Pattern whose reference magnitude is zero, so no dB normalization exists.
class DegeneratePatternError : public Error {
  public:
    using Error::Error;
};

// Exhaustive search asked to enumerate more codewords than allowed.
class RefusalError : public Error {
  public:
    using Error::Error;
};

class BehindCameraError : public DomainError {
  public:
    using DomainError::DomainError;
};

class OutOfViewError : public DomainError {
  public:
    using DomainError::DomainError;
};

// Disparity <= 0: point at infinity or a failed match.
class NoDepthError : public DomainError {
  public:
    using DomainError::DomainError;
};

// Malformed or inconsistent configuration. Maps to the CLI usage exit code.
class ConfigError : public Error {
  public:
    using Error::Error;
};

// Malformed codebook or scenario file. `line` is 0 when the problem is
// structural rather than syntactic; `field` names the offending JSON path.
class ParseError : public ConfigError {
  public:
    ParseError(const std::string& message, std::size_t line, std::string field)
        : ConfigError(message), line_(line), field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

  private:
    std::size_t line_;
    std::string field_;
};

}  // namespace ristrack
