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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qmeas/channels.hpp"
#include "qmeas/compat.hpp"
#include "qmeas/pointer.hpp"
#include "qmeas/records.hpp"
#include "qmeas/states.hpp"
#include "qmeas/tomography.hpp"

namespace qmeas::io {

using json = nlohmann::ordered_json;

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
json to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const json &j);

/// {"labels": [...], "effects": [matrix, ...]}
json to_json(const Povm &p);
Povm povm_from_json(const json &j);

/// {"dims": [d_in, d_out], "branches": {"label": [matrix, ...], ...}}
json to_json(const Instrument &ins);
Instrument instrument_from_json(const json &j);

DensityOperator state_from_json(const json &j);
UnitaryOperator unitary_from_json(const json &j);

json to_json(const CompatReport &r);
json to_json(const EventLog &log);
json to_json(const std::vector<BornComparison> &rows);
json to_json(const TomographyResult &r);
json to_json(const SweepTable &t);

/// Reads and parses a JSON file; `ErrorKind::io` if unreadable,
/// `ErrorKind::parse` if malformed.
json read_file(const std::filesystem::path &path);

/// Shortest round-trip-safe decimal text with 17 significant digits.
std::string format_double(double x);

} // namespace qmeas::io
