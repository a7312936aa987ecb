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
#include <limits>
#include <vector>

#include "qmeas/matrix.hpp"

namespace qmeas {

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Counter-based generator: the k-th output of stream (seed, stream) is
 * mix64(key + k * gamma) with key = mix64(seed ^ mix64(stream + c)).
 *
 * Streams are addressed rather than advanced, so run r of a simulation can
 * use `CounterRng(seed, r)` and produce the same draws whatever order (or
 * thread) the runs are evaluated in. Satisfies UniformRandomBitGenerator.
 */
class CounterRng {
  public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : key_(mix64(seed ^ mix64(stream + 0x6a09e667f3bcc909ULL))) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept {
        ++counter_;
        return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Standard normal (Box-Muller, one value per call).
    double normal() noexcept;

    /// Independent child stream.
    [[nodiscard]] CounterRng split(std::uint64_t index) const noexcept {
        CounterRng child(0);
        child.key_ = mix64(key_ ^ mix64(index + 0xbb67ae8584caa73bULL));
        return child;
    }

    [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Haar-distributed unitary: Gram-Schmidt on a complex Ginibre matrix
/// (column phases fixed by the positive diagonal of R).
ComplexMatrix haar_unitary(std::size_t dim, CounterRng &rng);

/// Haar-random unit vector.
std::vector<cplx> random_pure_state(std::size_t dim, CounterRng &rng);

/// Full-rank random density matrix G G^dagger / Tr(G G^dagger).
ComplexMatrix random_density_matrix(std::size_t dim, CounterRng &rng);

/// Random Hermitian matrix with i.i.d. Gaussian entries.
ComplexMatrix random_hermitian(std::size_t dim, CounterRng &rng);

/// Random effect: U diag(u_k) U^dagger with u_k uniform in [0, 1].
ComplexMatrix random_effect(std::size_t dim, CounterRng &rng);

/// Kraus operators (d_out x d_in) of a random trace-preserving map, cut from
/// a Haar isometry d_in -> n_kraus * d_out. Requires n_kraus * d_out >= d_in.
std::vector<ComplexMatrix> random_kraus(std::size_t d_in, std::size_t d_out,
                                        std::size_t n_kraus, CounterRng &rng);

} // namespace qmeas
