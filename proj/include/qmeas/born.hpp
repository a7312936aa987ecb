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
#include <span>
#include <vector>

#include "qmeas/linalg.hpp"
#include "qmeas/random.hpp"
#include "qmeas/states.hpp"

namespace qmeas {

/// Tr(rho e). Values within 1e-10 outside [0, 1] are clamped; anything
/// further out throws `ErrorKind::validation`.
double born_prob(const DensityOperator &rho, const Effect &e);

/// A family of mutually orthogonal projectors summing to the identity.
using ProjectorResolution = std::vector<ComplexMatrix>;

/// Checks that every member is a Hermitian idempotent, pairwise orthogonal,
/// and that they sum to I within 1e-9.
void validate_resolution(const ProjectorResolution &res);

/// max over resolutions of |sum_k Tr(rho P_k) - 1|.
double additivity_check(const DensityOperator &rho,
                        std::span<const ProjectorResolution> resolutions);

/// Rank-1 projectors onto the columns of a Haar-random unitary.
ProjectorResolution random_resolution(std::size_t dim, CounterRng &rng);

/// Tetrahedral qubit POVM E_k = (I + n_k . sigma)/4.
Povm ic_effects_qubit();

/// d^2 projectors onto fixed-seed Haar-random vectors, rank-checked.
/// For d = 2 prefer `ic_effects_qubit`.
std::vector<Effect> ic_projectors(std::size_t dim, std::uint64_t seed = 0x1c5e7);

/// Real Gram matrix Tr(E_j E_k) of an effect family.
RealMatrix effect_gram(std::span<const Effect> effects);

struct FrameSample {
    Effect effect;
    double probability;

    FrameSample(Effect e, double p);
};

struct ReconstructionReport {
    DensityOperator rho_hat;
    double residual;              ///< max_k |Tr(rho_hat E_k) - p_k|
    double condition_diagnostic;  ///< ratio of extreme eigenvalues of the normal matrix
};

/**
 * Linear-inversion estimate of rho from probabilities on an informationally
 * complete effect family: least squares over Hermitian matrices with
 * Tr rho = 1 as an exact constraint, then eigenvalues clipped at 0 and the
 * trace renormalised. Rank-deficient families throw `ErrorKind::rank`.
 */
ReconstructionReport reconstruct_state(std::span<const FrameSample> samples);

} // namespace qmeas
