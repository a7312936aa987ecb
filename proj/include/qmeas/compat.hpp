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

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmeas/channels.hpp"
#include "qmeas/states.hpp"

namespace qmeas {

enum class Verdict { compatible, incompatible, undecided };

std::string_view to_string(Verdict v) noexcept;

struct FeasibilityOptions {
    int max_iter = 20000;
    double tol = 1e-7;         ///< marginal residual for a compatible verdict
    int gap_window = 100;      ///< iterations over which the gap must stabilise
    double psd_tol = 1e-9;     ///< block PSD slack of a returned joint
};

/// Parent POVM G_ij, row-major over (label_a[i], label_b[j]).
class JointPovmCandidate {
  public:
    JointPovmCandidate(std::vector<Effect> effects, std::vector<std::string> labels_a,
                       std::vector<std::string> labels_b);

    [[nodiscard]] const Effect &at(std::size_t i, std::size_t j) const {
        return effects_[i * labels_b_.size() + j];
    }
    [[nodiscard]] std::span<const Effect> effects() const noexcept { return effects_; }
    [[nodiscard]] std::span<const std::string> labels_a() const noexcept { return labels_a_; }
    [[nodiscard]] std::span<const std::string> labels_b() const noexcept { return labels_b_; }
    [[nodiscard]] std::size_t rows() const noexcept { return labels_a_.size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return labels_b_.size(); }

  private:
    std::vector<Effect> effects_;
    std::vector<std::string> labels_a_;
    std::vector<std::string> labels_b_;
};

/// Row sums and column sums of the grid.
std::pair<Povm, Povm> marginals(const JointPovmCandidate &joint);

/// Grid of CP branches K_{f,w}, row-major, as Choi matrices.
struct JointInstrumentCandidate {
    std::vector<std::string> labels_f;
    std::vector<std::string> labels_w;
    std::vector<ChoiMatrix> blocks;

    [[nodiscard]] const ChoiMatrix &at(std::size_t f, std::size_t w) const {
        return blocks[f * labels_w.size() + w];
    }
    /// Instrument with outcomes "f|w".
    [[nodiscard]] Instrument to_instrument() const;
};

struct CompatReport {
    Verdict verdict = Verdict::undecided;
    /// compatible: smallest eigenvalue over the joint's blocks;
    /// otherwise: final inter-set gap (Frobenius norm over the grid).
    double witness_margin = 0.0;
    std::optional<JointPovmCandidate> joint_povm;
    std::optional<JointInstrumentCandidate> joint_instrument;
    int iterations = 0;
    double tolerance = 0.0;
    double marginal_residual = 0.0;  ///< max entrywise marginal defect of the last PSD iterate
};

/**
 * Joint measurability of two POVMs by Dykstra's alternating projections
 * between the affine set of Hermitian grids with the prescribed row/column
 * sums and the product of PSD cones.
 *
 * compatible   : the PSD iterate has marginal residual < tol and its affine
 *                projection is blockwise PSD within psd_tol (that projection
 *                is returned as the joint).
 * incompatible : gap ||x - y||_F > 10 tol and not shrinking by more than a
 *                relative 1e-4 over `gap_window` iterations.
 * undecided    : neither after max_iter.
 */
CompatReport joint_povm_feasibility(const Povm &a, const Povm &b,
                                    const FeasibilityOptions &opts = {});

enum class MarginalLevel {
    channel,     ///< sum_f K_{f,w} = J_w as CP maps
    statistics,  ///< sum_f K_{f,w} reproduces J_w's outcome probabilities only
};

struct JointInstrumentOptions {
    FeasibilityOptions solver;
    MarginalLevel second_marginal = MarginalLevel::statistics;
};

/**
 * Joint instrument {K_{f,w}} with sum_w K_{f,w} = I_f for every f (Choi level)
 * and sum_f K_{f,w} matching J_w at `second_marginal` level. With
 * MarginalLevel::channel both conditions are equalities of CP maps; this
 * needs equal total channels and is rejected up front otherwise.
 */
CompatReport joint_instrument_feasibility(const Instrument &first, const Instrument &second,
                                          const JointInstrumentOptions &opts = {});

using BlochAxis = std::array<double, 3>;

struct BoundaryOptions {
    FeasibilityOptions solver;
    double bracket_width = 0.005;
};

struct BoundaryEstimate {
    double eta;  ///< midpoint of the final bracket
    double lo;   ///< largest sharpness found compatible
    double hi;   ///< smallest sharpness found incompatible
    int probes;
};

/**
 * Bisection on the common sharpness eta of two unbiased binary qubit POVMs
 * along `axis_a` and `axis_b`. If eta = 1 is already compatible the result is
 * {1, 1, 1}. An undecided midpoint is retried a quarter-bracket to each side;
 * if both retries are undecided, throws `ErrorKind::undecided`.
 */
BoundaryEstimate sharpness_boundary(const BlochAxis &axis_a, const BlochAxis &axis_b,
                                    const BoundaryOptions &opts = {});

} // namespace qmeas
