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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qmeas {

using cplx = std::complex<double>;

/**
 * Dense row-major complex matrix.
 *
 * Shapes are fixed at construction and all entries are finite; arithmetic
 * operators check shapes and throw `Error(ErrorKind::dimension)` on mismatch.
 */
class ComplexMatrix {
  public:
    ComplexMatrix() : rows_(1), cols_(1), data_(1) {}
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
    /// Row-list literal, e.g. `{{1, 0}, {0, -1}}`.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
        return ComplexMatrix(rows, cols);
    }
    static ComplexMatrix diagonal(std::span<const double> diag);
    /// |ket><bra|
    static ComplexMatrix outer(std::span<const cplx> ket,
                               std::span<const cplx> bra);
    /// |psi><psi|
    static ComplexMatrix projector(std::span<const cplx> psi) {
        return outer(psi, psi);
    }
    /// Matrix unit |i><j| of the given square dimension.
    static ComplexMatrix unit(std::size_t dim, std::size_t i, std::size_t j);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] std::span<const cplx> data() const noexcept { return data_; }
    [[nodiscard]] std::span<cplx> data() noexcept { return data_; }

    cplx &operator()(std::size_t r, std::size_t c) noexcept {
        return data_[r * cols_ + c];
    }
    const cplx &operator()(std::size_t r, std::size_t c) const noexcept {
        return data_[r * cols_ + c];
    }

    [[nodiscard]] ComplexMatrix adjoint() const;
    [[nodiscard]] ComplexMatrix transpose() const;
    [[nodiscard]] ComplexMatrix conj() const;
    [[nodiscard]] cplx trace() const;
    [[nodiscard]] double frobenius_norm() const;
    /// Column `c` as a vector.
    [[nodiscard]] std::vector<cplx> column(std::size_t c) const;

    ComplexMatrix &operator+=(const ComplexMatrix &o);
    ComplexMatrix &operator-=(const ComplexMatrix &o);
    ComplexMatrix &operator*=(cplx s);

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
std::vector<cplx> operator*(const ComplexMatrix &a, std::span<const cplx> v);

/// Hilbert-Schmidt inner product Tr(A^dagger B).
cplx hs_inner(const ComplexMatrix &a, const ComplexMatrix &b);
/// Tr(A B) without forming the product.
cplx trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b);
/// max |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
/// max |A - A^dagger| entrywise
double hermiticity_defect(const ComplexMatrix &a);
/// (A + A^dagger)/2
ComplexMatrix hermitian_part(const ComplexMatrix &a);
bool all_finite(const ComplexMatrix &a) noexcept;

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
} // namespace pauli

} // namespace qmeas
