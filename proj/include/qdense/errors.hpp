// Copyright 2026 The qdense Authors
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

namespace qdense {

enum class ErrorKind {
    InvalidDimensions,
    InvalidParameter,
    InvalidState,
    NotHermitian,
    NotXState,
    NotConverged,
    PostSelectionImpossible,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidDimensions: return "InvalidDimensions";
        case ErrorKind::InvalidParameter: return "InvalidParameter";
        case ErrorKind::InvalidState: return "InvalidState";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotXState: return "NotXState";
        case ErrorKind::NotConverged: return "NotConverged";
        case ErrorKind::PostSelectionImpossible: return "PostSelectionImpossible";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace qdense
