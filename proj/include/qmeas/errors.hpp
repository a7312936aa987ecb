// Copyright 2026 The qmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

namespace qmeas {

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
    dimension,       ///< operand shapes do not line up
    validation,      ///< a domain invariant (Hermitian, unit trace, ...) is violated
    positivity,      ///< an operator expected to be PSD has a negative eigenvalue
    conditioning,    ///< conditioning on a zero-probability outcome
    rank,            ///< effect or probe family is not informationally complete
    resolution,      ///< pointer grid too coarse or too narrow
    undecided,       ///< feasibility solver could not reach a verdict
    io,              ///< file or stream failure
    parse,           ///< malformed JSON / input document
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace qmeas
