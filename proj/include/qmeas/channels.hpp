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
#include "qmeas/states.hpp"
#include "qmeas/tolerance.hpp"

namespace qmeas {

/// Trace-preserving CP map rho -> sum_k K_k rho K_k^dagger, K_k : d_in -> d_out.
class KrausChannel {
  public:
    KrausChannel(std::vector<ComplexMatrix> ops, const Tolerances &tol = default_tolerances);

    static KrausChannel identity(std::size_t dim);
    static KrausChannel unitary(const UnitaryOperator &u);

    [[nodiscard]] std::span<const ComplexMatrix> ops() const noexcept { return ops_; }
    [[nodiscard]] std::size_t d_in() const noexcept { return d_in_; }
    [[nodiscard]] std::size_t d_out() const noexcept { return d_out_; }

  private:
    std::vector<ComplexMatrix> ops_;
    std::size_t d_in_;
    std::size_t d_out_;
};

/// Outcome-labelled CP branches whose sum is trace preserving.
class Instrument {
  public:
    struct Branch {
        std::string label;
        std::vector<ComplexMatrix> ops;
    };

    Instrument(std::vector<Branch> branches, const Tolerances &tol = default_tolerances);

    /// Single outcome "id" carrying the identity channel.
    static Instrument identity(std::size_t dim);

    [[nodiscard]] std::span<const Branch> branches() const noexcept { return branches_; }
    [[nodiscard]] const Branch &operator[](std::size_t i) const { return branches_[i]; }
    [[nodiscard]] std::size_t size() const noexcept { return branches_.size(); }
    [[nodiscard]] std::size_t d_in() const noexcept { return d_in_; }
    [[nodiscard]] std::size_t d_out() const noexcept { return d_out_; }
    [[nodiscard]] std::vector<std::string> labels() const;
    [[nodiscard]] std::size_t index_of(const std::string &label) const;

  private:
    std::vector<Branch> branches_;
    std::size_t d_in_;
    std::size_t d_out_;
};

/**
 * Choi matrix C = sum_ij |i><j| (x) L(|i><j|), dimension d_in * d_out, row
 * index i * d_out + a (input factor first). PSD within 1e-9 is enforced.
 */
class ChoiMatrix {
  public:
    ChoiMatrix(const ComplexMatrix &m, std::size_t d_in, std::size_t d_out,
               double psd_tol = 1e-9);

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] std::size_t d_in() const noexcept { return d_in_; }
    [[nodiscard]] std::size_t d_out() const noexcept { return d_out_; }

  private:
    ComplexMatrix m_;
    std::size_t d_in_;
    std::size_t d_out_;
};

/// sum_k K X K^dagger for any square X of the input dimension.
ComplexMatrix apply_kraus(std::span<const ComplexMatrix> ops, const ComplexMatrix &x);
/// Heisenberg picture: sum_k K^dagger F K.
ComplexMatrix pullback_kraus(std::span<const ComplexMatrix> ops, const ComplexMatrix &f);

DensityOperator apply(const KrausChannel &ch, const DensityOperator &rho);
Effect pullback_effect(const KrausChannel &ch, const Effect &f);

/**
 * Detector channel S -> A: rho_S -> Tr_S[U (rho_S (x) sigma_A) U^dagger].
 * Its adjoint carries apparatus readout effects back to system effects.
 * Kraus operators are (<s| (x) I) U (I (x) sqrt(p_m)|phi_m>) over the
 * eigen-decomposition of sigma_A.
 */
KrausChannel detector_channel(const UnitaryOperator &u, const DensityOperator &sigma_a);

/**
 * Induced system POVM E_i defined by
 *   Tr(rho E_i) = Tr[U (rho (x) sigma_A) U^dagger (I_S (x) F_i)]  for all rho,
 * evaluated on the matrix units |b><a| of S (E_i[a][b] is the right-hand side
 * at rho = |b><a|). Works for mixed sigma_A. Labels follow the readout.
 */
Povm induced_povm(const UnitaryOperator &u, const DensityOperator &sigma_a,
                  const Povm &readout);

/// Branch i has the single Kraus operator sqrt(E_i).
Instrument luders_instrument(const Povm &p);

/// Sum of all branches as one channel.
KrausChannel total_channel(const Instrument &ins);

/// POVM {sum_k K_fk^dagger K_fk}_f implemented by the instrument.
Povm induced_povm(const Instrument &ins);

/// p_f = Tr(sum_k K_fk rho K_fk^dagger).
std::vector<double> instrument_probabilities(const Instrument &ins,
                                             const DensityOperator &rho);

/// Post-measurement state for `label`; throws `ErrorKind::conditioning` if
/// the outcome has probability <= 1e-12.
DensityOperator instrument_update(const Instrument &ins, const DensityOperator &rho,
                                  const std::string &label);

ChoiMatrix choi_of_branch(std::span<const ComplexMatrix> ops);
/// Kraus operators sqrt(lambda_k) unvec(v_k) from the eigenvectors of C.
/// Eigenvalues below -1e-9 throw `ErrorKind::positivity`.
std::vector<ComplexMatrix> branch_of_choi(const ChoiMatrix &c);
/// L(X) = sum_ij X_ij (<i| (x) I) C (|j> (x) I).
ComplexMatrix apply_choi(const ChoiMatrix &c, const ComplexMatrix &x);

/// Off-diagonals in `basis` are scaled by (1 - strength); strength in [0, 1].
KrausChannel dephasing_channel(const UnitaryOperator &basis, double strength);

} // namespace qmeas
