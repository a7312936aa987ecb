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

namespace qmeas {

/// Validation tolerances shared by every domain type constructor.
struct Tolerances {
    double herm = 1e-10;     ///< max entrywise |A - A^dagger|
    double psd = 1e-10;      ///< allowed negative eigenvalue slack
    double trace = 1e-10;    ///< |Tr rho - 1|
    double complete = 1e-9;  ///< entrywise |sum E_i - I|
    double unitary = 1e-10;  ///< entrywise |U^dagger U - I|
};

inline constexpr Tolerances default_tolerances{};

/// Largest supported Hilbert-space dimension. Everything is dense O(d^3).
inline constexpr int max_dimension = 64;

} // namespace qmeas
