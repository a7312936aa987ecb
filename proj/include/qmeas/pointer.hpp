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

#include <string>
#include <vector>

#include "qmeas/states.hpp"

namespace qmeas {

/// Error function to ~1e-15 absolute: series for |x| <= 2, continued
/// fraction for erfc beyond. Odd by construction.
double erf(double x);
/// Complementary error function for x >= 0 region accuracy.
double erfc(double x);

enum class ShiftConvention {
    plus_z_to_plus_q,   ///< sigma_z = +1 shifts the pointer toward +q
    plus_z_to_minus_q,
};

struct PointerGrid {
    double q_min;
    double q_max;
    int n_points;
};

/**
 * Qubit-pointer coupling: the pointer is a centred Gaussian whose position
 * density has standard deviation `delta`; the coupling translates it by
 * +-kappa depending on the sigma_z eigenvalue (hbar = 1).
 */
struct PointerConfig {
    double kappa;
    double delta;
    PointerGrid grid;
    ShiftConvention shift = ShiftConvention::plus_z_to_plus_q;

    /// Default grid: q in [-(kappa + 8 delta), kappa + 8 delta], 4097 points.
    static PointerConfig with_default_grid(double kappa, double delta);

    /// Throws `ErrorKind::validation` on kappa < 0, delta <= 0,
    /// q_min >= 0 >= q_max or n_points < 16. Returns warnings (empty when the
    /// grid covers +-(kappa + 6 delta)).
    std::vector<std::string> validate() const;
};

enum class SharpnessMethod { analytic, numeric };

struct SharpnessResult {
    double eta;
    SharpnessMethod method;
    double residual = 0.0;  ///< numeric only: |sum E - I| after construction
};

/// eta = erf(kappa / (sqrt2 delta)).
SharpnessResult eta_analytic(double kappa, double delta);

struct InducedPointerPovm {
    Povm povm;  ///< labels "+", "-"
    SharpnessResult sharpness;
};

/**
 * Induced binary POVM from the discretised pointer.
 *
 * The shifted Gaussian amplitude is sampled on the grid and |amplitude|^2 is
 * integrated over q > 0 and q < 0 by the trapezoid rule; the bin containing
 * q = 0 is split with a linearly interpolated integrand value. Probabilities
 * are normalised by the grid total. Throws `ErrorKind::resolution` when the
 * grid misses +-(kappa + 6 delta) or its spacing exceeds delta / 4.
 */
InducedPointerPovm induced_effects_numeric(const PointerConfig &cfg);

struct SweepRow {
    double kappa;
    double delta;
    double eta_analytic;
    double eta_numeric;
    double abs_diff;
};

struct SweepTable {
    std::vector<SweepRow> rows;  ///< kappa-major order
    double max_abs_diff = 0.0;
};

/// Every (kappa, delta) pair on the default grid. Rows are computed in
/// parallel and stored in input order.
SweepTable eta_sweep(const std::vector<double> &kappas, const std::vector<double> &deltas,
                     int n_points = 4097);

} // namespace qmeas
