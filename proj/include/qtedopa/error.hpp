// Copyright 2026 The qtedopa Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qtedopa {

/// Stable error categories. The numeric values double as CLI exit codes.
enum class ErrorCode : int {
    InvalidInput = 2,
    NumericalFailure = 3,
    UnsupportedSize = 4,
    ParseError = 5,
    Io = 6,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidInput:
        return "invalid-input";
    case ErrorCode::NumericalFailure:
        return "numerical-failure";
    case ErrorCode::UnsupportedSize:
        return "unsupported-size";
    case ErrorCode::ParseError:
        return "parse-error";
    case ErrorCode::Io:
        return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Numerical failure carrying the residual (or error estimate) that failed.
class NumericalError : public Error {
  public:
    NumericalError(const std::string &what, double residual)
        : Error(ErrorCode::NumericalFailure, what), residual_(residual) {}

    [[nodiscard]] double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what) {
    throw Error(code, what);
}

inline void require(bool condition, const std::string &what) {
    if (!condition) {
        throw Error(ErrorCode::InvalidInput, what);
    }
}

} // namespace qtedopa
