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

#include "qmeas/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmeas/errors.hpp"

namespace qmeas {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::validation: return "validation";
    case ErrorKind::positivity: return "positivity";
    case ErrorKind::conditioning: return "conditioning";
    case ErrorKind::rank: return "rank";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::undecided: return "undecided";
    case ErrorKind::io: return "io";
    case ErrorKind::parse: return "parse";
    }
    return "unknown";
}

namespace {

void require_shape(bool ok, const char *op, const ComplexMatrix &a,
                   const ComplexMatrix &b) {
    if (!ok) {
        throw Error(ErrorKind::dimension,
                    std::string(op) + ": shape mismatch " +
                        std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
        throw Error(ErrorKind::dimension, "matrix dimensions must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) {
        throw Error(ErrorKind::dimension, "matrix dimensions must be positive");
    }
    if (data_.size() != rows * cols) {
        throw Error(ErrorKind::dimension,
                    "matrix data length " + std::to_string(data_.size()) +
                        " does not match " + std::to_string(rows) + "x" +
                        std::to_string(cols));
    }
    if (!all_finite(*this)) {
        throw Error(ErrorKind::validation, "matrix has non-finite entries");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    if (rows_ == 0 || cols_ == 0) {
        throw Error(ErrorKind::dimension, "matrix dimensions must be positive");
    }
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw Error(ErrorKind::dimension, "ragged matrix literal");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> ket,
                                   std::span<const cplx> bra) {
    ComplexMatrix m(ket.size(), bra.size());
    for (std::size_t i = 0; i < ket.size(); ++i)
        for (std::size_t j = 0; j < bra.size(); ++j)
            m(i, j) = ket[i] * std::conj(bra[j]);
    return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t dim, std::size_t i, std::size_t j) {
    ComplexMatrix m(dim, dim);
    m(i, j) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            m(c, r) = std::conj((*this)(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            m(c, r) = (*this)(r, c);
    return m;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix m = *this;
    for (auto &v : m.data_) v = std::conj(v);
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto &v : data_) s += std::norm(v);
    return std::sqrt(s);
}

std::vector<cplx> ComplexMatrix::column(std::size_t c) const {
    std::vector<cplx> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
    require_shape(rows_ == o.rows_ && cols_ == o.cols_, "operator+", *this, o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
    require_shape(rows_ == o.rows_ && cols_ == o.cols_, "operator-", *this, o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx s) {
    for (auto &v : data_) v *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_shape(a.cols() == b.rows(), "operator*", a, b);
    ComplexMatrix m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
        }
    }
    return m;
}

std::vector<cplx> operator*(const ComplexMatrix &a, std::span<const cplx> v) {
    if (a.cols() != v.size()) {
        throw Error(ErrorKind::dimension, "matrix-vector shape mismatch");
    }
    std::vector<cplx> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
    return out;
}

cplx hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "hs_inner", a, b);
    cplx s = 0.0;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t k = 0; k < da.size(); ++k) s += std::conj(da[k]) * db[k];
    return s;
}

cplx trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_shape(a.cols() == b.rows() && a.rows() == b.cols(), "trace_of_product",
                  a, b);
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
    return s;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_diff", a, b);
    double m = 0.0;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t k = 0; k < da.size(); ++k) m = std::max(m, std::abs(da[k] - db[k]));
    return m;
}

double hermiticity_defect(const ComplexMatrix &a) {
    if (!a.is_square()) return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

ComplexMatrix hermitian_part(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw Error(ErrorKind::dimension, "hermitian_part of a non-square matrix");
    }
    ComplexMatrix h(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        h(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

bool all_finite(const ComplexMatrix &a) noexcept {
    return std::all_of(a.data().begin(), a.data().end(), [](const cplx &v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

namespace pauli {
ComplexMatrix x() { return {{0, 1}, {1, 0}}; }
ComplexMatrix y() { return {{0, cplx(0, -1)}, {cplx(0, 1), 0}}; }
ComplexMatrix z() { return {{1, 0}, {0, -1}}; }
} // namespace pauli

} // namespace qmeas
