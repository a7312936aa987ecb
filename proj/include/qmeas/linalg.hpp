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
#include <vector>

#include "qmeas/matrix.hpp"

namespace qmeas {

/// Which tensor factor survives a partial trace.
enum class Keep { first, second };

/// Kronecker product; row index (i_a, i_b) maps to i_a * dim_b + i_b.
ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b);

/// Trace out one factor of a (dim_a * dim_b)-square matrix.
ComplexMatrix partial_trace(const ComplexMatrix &m, std::size_t dim_a,
                            std::size_t dim_b, Keep keep);

struct HermitianEigen {
    std::vector<double> values;  ///< ascending
    ComplexMatrix vectors;       ///< column k belongs to values[k]
};

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
 *
 * Sweeps stop once the off-diagonal Frobenius norm drops below
 * 1e-14 * ||A||_F (or 1e-300 for the zero matrix). Input must be Hermitian
 * within `herm_tol`, otherwise `ErrorKind::validation` is thrown; the
 * Hermitian part is what gets diagonalised.
 */
HermitianEigen eig_hermitian(const ComplexMatrix &m, double herm_tol = 1e-8);

/// Eigenvalues only, ascending.
std::vector<double> eigvals_hermitian(const ComplexMatrix &m, double herm_tol = 1e-8);

double min_eigenvalue(const ComplexMatrix &m, double herm_tol = 1e-8);

/// V diag(f(lambda)) V^dagger
template <class F>
ComplexMatrix apply_spectral(const HermitianEigen &e, F &&f) {
    const std::size_t n = e.values.size();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = f(e.values[k]);
        if (fk == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = e.vectors(i, k) * fk;
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += vik * std::conj(e.vectors(j, k));
        }
    }
    return out;
}

/// Principal square root of a PSD matrix. Eigenvalues in [-psd_tol, 0) are
/// clipped to zero; anything below -psd_tol throws `ErrorKind::positivity`.
ComplexMatrix sqrt_psd(const ComplexMatrix &m, double psd_tol = 1e-10);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues set to zero).
ComplexMatrix project_psd(const ComplexMatrix &m);

/// Spectrum clipped to [lo, hi].
ComplexMatrix clip_spectrum(const ComplexMatrix &m, double lo, double hi);

/// (1/2) ||A - B||_1 for Hermitian A, B.
double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b);

/// Dense real matrix used for small least-squares problems.
struct RealMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
    double &operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Solve a square system by Gaussian elimination with partial pivoting.
/// Throws `ErrorKind::rank` if a pivot falls below `pivot_tol` times the
/// largest column entry seen.
std::vector<double> solve_linear(RealMatrix a, std::vector<double> b,
                                 double pivot_tol = 1e-13);

/// Numerical rank of a real symmetric PSD matrix (eigenvalues above
/// rel_tol * largest eigenvalue).
std::size_t psd_rank(const RealMatrix &gram, double rel_tol = 1e-10);

/// Eigenvalues of a real symmetric matrix, ascending.
std::vector<double> eigvals_symmetric(const RealMatrix &m);

/**
 * Orthonormal basis of the d x d Hermitian matrices under the
 * Hilbert-Schmidt inner product: normalised diagonal units, then
 * (|i><j| + |j><i|)/sqrt2 and i(|j><i| - |i><j|)/sqrt2 for i < j.
 */
std::vector<ComplexMatrix> hermitian_basis(std::size_t dim);

/// Real coordinates of a Hermitian matrix in `hermitian_basis(dim)`.
std::vector<double> hermitian_coordinates(const ComplexMatrix &h,
                                          std::span<const ComplexMatrix> basis);

ComplexMatrix from_hermitian_coordinates(std::span<const double> x,
                                         std::span<const ComplexMatrix> basis);

} // namespace qmeas
