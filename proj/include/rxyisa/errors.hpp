// Copyright 2026 The rxyisa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RXYISA_ERRORS_HPP
#define RXYISA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rxyisa {

/// Process exit codes used by the command-line front end. Each error class
/// below maps onto one of these.
enum class ExitCode : int {
    kSuccess = 0,
    kGeneric = 1,
    kParse = 2,
    kValidation = 3,
    kCapacityExceeded = 4,
    kGoldenMismatch = 5,
    kIo = 6,
    kGoldenConfigMismatch = 7,
};

class Error : public std::runtime_error {
   public:
    explicit Error(const std::string &what, ExitCode code = ExitCode::kGeneric)
        : std::runtime_error(what), code_(code) {}
    ExitCode code() const noexcept { return code_; }

   private:
    ExitCode code_;
};

class ParseError : public Error {
   public:
    ParseError(std::size_t line, const std::string &msg)
        : Error("line " + std::to_string(line) + ": " + msg, ExitCode::kParse), line_(line) {}
    std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

class ValidationError : public Error {
   public:
    explicit ValidationError(const std::string &msg) : Error(msg, ExitCode::kValidation) {}
};

// Program-structure failures all surface as validation errors at the CLI.
struct NonUnitarySlot : ValidationError {
    using ValidationError::ValidationError;
};
struct SameQubit : ValidationError {
    using ValidationError::ValidationError;
};
struct UnsupportedGate : ValidationError {
    using ValidationError::ValidationError;
};
struct DimensionMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidProgram : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidNoise : ValidationError {
    using ValidationError::ValidationError;
};
struct StepOutOfRange : ValidationError {
    using ValidationError::ValidationError;
};
struct OutOfRange : ValidationError {
    using ValidationError::ValidationError;
};
struct NotHermitian : ValidationError {
    using ValidationError::ValidationError;
};
struct NotNormalized : ValidationError {
    using ValidationError::ValidationError;
};
struct AmplitudeOverflow : ValidationError {
    using ValidationError::ValidationError;
};
struct NotResident : ValidationError {
    using ValidationError::ValidationError;
};
struct ConfigError : ValidationError {
    using ValidationError::ValidationError;
};

class CapacityExceeded : public Error {
   public:
    explicit CapacityExceeded(const std::string &msg) : Error(msg, ExitCode::kCapacityExceeded) {}
};

class GoldenMismatch : public Error {
   public:
    explicit GoldenMismatch(const std::string &msg) : Error(msg, ExitCode::kGoldenMismatch) {}
};

class GoldenConfigMismatch : public Error {
   public:
    explicit GoldenConfigMismatch(const std::string &msg) : Error(msg, ExitCode::kGoldenConfigMismatch) {}
};

class IoError : public Error {
   public:
    explicit IoError(const std::string &msg) : Error(msg, ExitCode::kIo) {}
};

}  // namespace rxyisa

#endif  // RXYISA_ERRORS_HPP
