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

#include "qmeas/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qmeas/errors.hpp"

namespace qmeas {

ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t br = b.rows();
    const std::size_t bc = b.cols();
    ComplexMatrix m(a.rows() * br, a.cols() * bc);
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const cplx av = a(ia, ja);
            if (av == cplx{}) continue;
            for (std::size_t ib = 0; ib < br; ++ib)
                for (std::size_t jb = 0; jb < bc; ++jb)
                    m(ia * br + ib, ja * bc + jb) = av * b(ib, jb);
        }
    return m;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, std::size_t dim_a,
                            std::size_t dim_b, Keep keep) {
    if (dim_a == 0 || dim_b == 0 || !m.is_square() || m.rows() != dim_a * dim_b) {
        throw Error(ErrorKind::dimension,
                    "partial_trace: matrix of size " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + " is not " + std::to_string(dim_a) +
                        "*" + std::to_string(dim_b) + " square");
    }
    if (keep == Keep::first) {
        ComplexMatrix out(dim_a, dim_a);
        for (std::size_t i = 0; i < dim_a; ++i)
            for (std::size_t j = 0; j < dim_a; ++j) {
                cplx s = 0.0;
                for (std::size_t k = 0; k < dim_b; ++k) s += m(i * dim_b + k, j * dim_b + k);
                out(i, j) = s;
            }
        return out;
    }
    ComplexMatrix out(dim_b, dim_b);
    for (std::size_t i = 0; i < dim_b; ++i)
        for (std::size_t j = 0; j < dim_b; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < dim_a; ++k) s += m(k * dim_b + i, k * dim_b + j);
            out(i, j) = s;
        }
    return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

constexpr int max_sweeps = 100;

} // namespace

HermitianEigen eig_hermitian(const ComplexMatrix &m, double herm_tol) {
    if (!m.is_square()) {
        throw Error(ErrorKind::dimension, "eig_hermitian: matrix is not square");
    }
    if (hermiticity_defect(m) > herm_tol) {
        throw Error(ErrorKind::validation, "eig_hermitian: matrix is not Hermitian");
    }
    const std::size_t n = m.rows();
    ComplexMatrix a = hermitian_part(m);
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double stop = std::max(1e-14 * a.frobenius_norm(), 1e-300);
    for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r < 1e-300) continue;
                // A_block = P S P^dagger with P = diag(1, conj(phase)), S real
                // symmetric; rotate S with the real Jacobi angle.
                const cplx phase = apq / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * r, aqq - app);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                // V = P R, R = [[c, s], [-s, c]]
                const cplx v00 = c;
                const cplx v01 = s;
                const cplx v10 = -s * std::conj(phase);
                const cplx v11 = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * v00 + akq * v10;
                    a(k, q) = akp * v01 + akq * v11;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = std::conj(v00) * apk + std::conj(v10) * aqk;
                    a(q, k) = std::conj(v01) * apk + std::conj(v11) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = vkp * v00 + vkq * v10;
                    v(k, q) = vkp * v01 + vkq * v11;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });
    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::vector<double> eigvals_hermitian(const ComplexMatrix &m, double herm_tol) {
    return eig_hermitian(m, herm_tol).values;
}

double min_eigenvalue(const ComplexMatrix &m, double herm_tol) {
    return eig_hermitian(m, herm_tol).values.front();
}

ComplexMatrix sqrt_psd(const ComplexMatrix &m, double psd_tol) {
    const auto e = eig_hermitian(m);
    if (e.values.front() < -psd_tol) {
        throw Error(ErrorKind::positivity,
                    "sqrt_psd: eigenvalue " + std::to_string(e.values.front()) +
                        " below -" + std::to_string(psd_tol));
    }
    return apply_spectral(e, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

ComplexMatrix project_psd(const ComplexMatrix &m) {
    const auto e = eig_hermitian(m);
    if (e.values.front() >= 0.0) return hermitian_part(m);
    return apply_spectral(e, [](double x) { return x > 0.0 ? x : 0.0; });
}

ComplexMatrix clip_spectrum(const ComplexMatrix &m, double lo, double hi) {
    const auto e = eig_hermitian(m);
    return apply_spectral(e, [lo, hi](double x) { return std::clamp(x, lo, hi); });
}

double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    const auto vals = eigvals_hermitian(a - b);
    double s = 0.0;
    for (double v : vals) s += std::abs(v);
    return 0.5 * s;
}

std::vector<double> solve_linear(RealMatrix a, std::vector<double> b, double pivot_tol) {
    const std::size_t n = a.rows;
    if (a.cols != n || b.size() != n) {
        throw Error(ErrorKind::dimension, "solve_linear: system is not square");
    }
    double scale = 0.0;
    for (double v : a.data) scale = std::max(scale, std::abs(v));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) <= pivot_tol * std::max(scale, 1e-300)) {
            throw Error(ErrorKind::rank, "solve_linear: singular system");
        }
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(piv, c));
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a(i, c) * x[c];
        x[i] = s / a(i, i);
    }
    return x;
}

std::vector<double> eigvals_symmetric(const RealMatrix &m) {
    ComplexMatrix c(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) c(i, j) = m(i, j);
    return eigvals_hermitian(c, 1e-8 * std::max(1.0, c.frobenius_norm()));
}

std::size_t psd_rank(const RealMatrix &gram, double rel_tol) {
    const auto vals = eigvals_symmetric(gram);
    const double top = vals.empty() ? 0.0 : vals.back();
    if (top <= 0.0) return 0;
    return static_cast<std::size_t>(std::count_if(
        vals.begin(), vals.end(), [&](double v) { return v > rel_tol * top; }));
}

std::vector<ComplexMatrix> hermitian_basis(std::size_t dim) {
    std::vector<ComplexMatrix> basis;
    basis.reserve(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) basis.push_back(ComplexMatrix::unit(dim, i, i));
    const double h = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            ComplexMatrix re(dim, dim);
            re(i, j) = h;
            re(j, i) = h;
            basis.push_back(std::move(re));
            ComplexMatrix im(dim, dim);
            im(i, j) = cplx(0, -h);
            im(j, i) = cplx(0, h);
            basis.push_back(std::move(im));
        }
    return basis;
}

std::vector<double> hermitian_coordinates(const ComplexMatrix &h,
                                          std::span<const ComplexMatrix> basis) {
    std::vector<double> x(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) x[k] = hs_inner(basis[k], h).real();
    return x;
}

ComplexMatrix from_hermitian_coordinates(std::span<const double> x,
                                         std::span<const ComplexMatrix> basis) {
    if (x.size() != basis.size() || basis.empty()) {
        throw Error(ErrorKind::dimension, "coordinate/basis length mismatch");
    }
    ComplexMatrix m(basis.front().rows(), basis.front().cols());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (x[k] == 0.0) continue;
        auto src = basis[k].data();
        auto dst = m.data();
        for (std::size_t e = 0; e < src.size(); ++e) dst[e] += x[k] * src[e];
    }
    return m;
}

} // namespace qmeas
