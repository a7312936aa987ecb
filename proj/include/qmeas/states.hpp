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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qmeas/matrix.hpp"
#include "qmeas/tolerance.hpp"

namespace qmeas {

// Only B(H) for finite-dimensional H is represented; the dimension cap is
// `max_dimension`.

/// Positive, unit-trace operator. Stored as its exact Hermitian part.
class DensityOperator {
  public:
    explicit DensityOperator(const ComplexMatrix &m,
                             const Tolerances &tol = default_tolerances);

    /// |psi><psi| for a normalised ket.
    static DensityOperator pure(std::span<const cplx> psi,
                                const Tolerances &tol = default_tolerances);
    static DensityOperator maximally_mixed(std::size_t dim);
    /// Computational basis state |k><k|.
    static DensityOperator basis_state(std::size_t dim, std::size_t k);

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] std::size_t dim() const noexcept { return m_.rows(); }

  private:
    ComplexMatrix m_;
};

/// Operator with spectrum in [0, 1].
class Effect {
  public:
    explicit Effect(const ComplexMatrix &m, const Tolerances &tol = default_tolerances);

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] std::size_t dim() const noexcept { return m_.rows(); }

  private:
    ComplexMatrix m_;
};

/// Labelled family of effects resolving the identity.
class Povm {
  public:
    Povm(std::vector<Effect> effects, std::vector<std::string> labels,
         const Tolerances &tol = default_tolerances);
    /// Labels "0", "1", ... .
    explicit Povm(std::vector<Effect> effects,
                  const Tolerances &tol = default_tolerances);

    [[nodiscard]] std::span<const Effect> effects() const noexcept { return effects_; }
    [[nodiscard]] std::span<const std::string> labels() const noexcept { return labels_; }
    [[nodiscard]] const Effect &operator[](std::size_t i) const { return effects_[i]; }
    [[nodiscard]] std::size_t size() const noexcept { return effects_.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return effects_.front().dim(); }
    /// Index of `label`, or throws `ErrorKind::validation`.
    [[nodiscard]] std::size_t index_of(const std::string &label) const;

  private:
    std::vector<Effect> effects_;
    std::vector<std::string> labels_;
};

/// Square matrix with U^dagger U = I.
class UnitaryOperator {
  public:
    explicit UnitaryOperator(const ComplexMatrix &m,
                             const Tolerances &tol = default_tolerances);

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] std::size_t dim() const noexcept { return m_.rows(); }

  private:
    ComplexMatrix m_;
};

/// Unbiased binary qubit POVM E_+- = (I +- eta n.sigma)/2, labels "+", "-".
Povm unsharp_qubit_povm(double eta, double nx, double ny, double nz);
/// The z-axis case, E_+- = (I +- eta sigma_z)/2.
Povm unsharp_z_povm(double eta);
/// Rank-1 projectors onto the columns of `basis`, labels "0".."d-1".
Povm basis_povm(const UnitaryOperator &basis);

/// Controlled-NOT on two qubits, first factor controls.
UnitaryOperator cnot();

} // namespace qmeas
