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

#include "qmeas/random.hpp"

#include <cmath>
#include <numbers>

#include "qmeas/errors.hpp"

namespace qmeas {

double CounterRng::normal() noexcept {
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, CounterRng &rng) {
    ComplexMatrix g(rows, cols);
    for (auto &v : g.data()) v = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
    return g;
}

// Modified Gram-Schmidt on the columns; R has a positive diagonal, which is
// the phase convention that makes the Q factor Haar distributed.
ComplexMatrix orthonormalise_columns(ComplexMatrix g) {
    const std::size_t n = g.rows();
    for (std::size_t k = 0; k < g.cols(); ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            cplx dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(g(i, j)) * g(i, k);
            for (std::size_t i = 0; i < n; ++i) g(i, k) -= dot * g(i, j);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(g(i, k));
        norm = std::sqrt(norm);
        if (norm < 1e-12) throw Error(ErrorKind::rank, "degenerate Gaussian sample");
        for (std::size_t i = 0; i < n; ++i) g(i, k) /= norm;
    }
    return g;
}

} // namespace

ComplexMatrix haar_unitary(std::size_t dim, CounterRng &rng) {
    return orthonormalise_columns(ginibre(dim, dim, rng));
}

std::vector<cplx> random_pure_state(std::size_t dim, CounterRng &rng) {
    return orthonormalise_columns(ginibre(dim, 1, rng)).column(0);
}

ComplexMatrix random_density_matrix(std::size_t dim, CounterRng &rng) {
    const ComplexMatrix g = ginibre(dim, dim, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return hermitian_part(rho);
}

ComplexMatrix random_hermitian(std::size_t dim, CounterRng &rng) {
    return hermitian_part(ginibre(dim, dim, rng));
}

ComplexMatrix random_effect(std::size_t dim, CounterRng &rng) {
    const ComplexMatrix u = haar_unitary(dim, rng);
    ComplexMatrix d(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) d(k, k) = rng.uniform();
    return hermitian_part(u * d * u.adjoint());
}

std::vector<ComplexMatrix> random_kraus(std::size_t d_in, std::size_t d_out,
                                        std::size_t n_kraus, CounterRng &rng) {
    if (n_kraus * d_out < d_in) {
        throw Error(ErrorKind::dimension, "random_kraus: n_kraus * d_out < d_in");
    }
    const ComplexMatrix v = orthonormalise_columns(ginibre(n_kraus * d_out, d_in, rng));
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < n_kraus; ++k) {
        ComplexMatrix op(d_out, d_in);
        for (std::size_t a = 0; a < d_out; ++a)
            for (std::size_t i = 0; i < d_in; ++i) op(a, i) = v(k * d_out + a, i);
        ops.push_back(std::move(op));
    }
    return ops;
}

} // namespace qmeas
