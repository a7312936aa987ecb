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

#include <cstdint>
#include <ostream>
#include <string_view>

#include "qmeas/errors.hpp"

namespace qmeas {

inline constexpr std::string_view tool_version = "0.1.0";

/// Process exit status: 0 success, 1 validation, 2 solver undecided, 3 I/O.
int exit_code_for(ErrorKind kind) noexcept;

/// 64-bit FNV-1a hash, used for output checksums in run manifests.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/**
 * Runs one `qmeas` subcommand. Results go to `out` (or the `--out` file,
 * with a `<file>.manifest.json` run manifest next to it); diagnostics and
 * usage text go to `err`.
 */
int cli_dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace qmeas
