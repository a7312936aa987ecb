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

#include "qmeas/states.hpp"

#include <cmath>
#include <set>

#include "qmeas/errors.hpp"
#include "qmeas/linalg.hpp"

namespace qmeas {

namespace {

void require_square_dim(const ComplexMatrix &m, const char *what) {
    if (!m.is_square()) {
        throw Error(ErrorKind::dimension, std::string(what) + " must be square");
    }
    if (m.rows() > static_cast<std::size_t>(max_dimension)) {
        throw Error(ErrorKind::dimension, std::string(what) + " dimension " +
                                              std::to_string(m.rows()) +
                                              " exceeds the supported maximum of " +
                                              std::to_string(max_dimension));
    }
    if (!all_finite(m)) {
        throw Error(ErrorKind::validation, std::string(what) + " has non-finite entries");
    }
}

void require_hermitian(const ComplexMatrix &m, double tol, const char *what) {
    const double defect = hermiticity_defect(m);
    if (defect > tol) {
        throw Error(ErrorKind::validation, std::string(what) + " is not Hermitian (defect " +
                                               std::to_string(defect) + ")");
    }
}

} // namespace

DensityOperator::DensityOperator(const ComplexMatrix &m, const Tolerances &tol) {
    require_square_dim(m, "density operator");
    require_hermitian(m, tol.herm, "density operator");
    m_ = hermitian_part(m);
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > tol.trace) {
        throw Error(ErrorKind::validation,
                    "density operator trace " + std::to_string(tr) + " is not 1");
    }
    const double lo = min_eigenvalue(m_);
    if (lo < -tol.psd) {
        throw Error(ErrorKind::positivity,
                    "density operator has eigenvalue " + std::to_string(lo));
    }
}

DensityOperator DensityOperator::pure(std::span<const cplx> psi, const Tolerances &tol) {
    return DensityOperator(ComplexMatrix::projector(psi), tol);
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
    return DensityOperator(ComplexMatrix::identity(dim) * cplx(1.0 / static_cast<double>(dim)));
}

DensityOperator DensityOperator::basis_state(std::size_t dim, std::size_t k) {
    if (k >= dim) throw Error(ErrorKind::dimension, "basis index out of range");
    return DensityOperator(ComplexMatrix::unit(dim, k, k));
}

Effect::Effect(const ComplexMatrix &m, const Tolerances &tol) {
    require_square_dim(m, "effect");
    require_hermitian(m, tol.herm, "effect");
    m_ = hermitian_part(m);
    const auto vals = eigvals_hermitian(m_);
    if (vals.front() < -tol.psd) {
        throw Error(ErrorKind::positivity,
                    "effect has eigenvalue " + std::to_string(vals.front()) + " < 0");
    }
    if (vals.back() > 1.0 + tol.psd) {
        throw Error(ErrorKind::validation,
                    "effect has eigenvalue " + std::to_string(vals.back()) + " > 1");
    }
}

Povm::Povm(std::vector<Effect> effects, std::vector<std::string> labels,
           const Tolerances &tol)
    : effects_(std::move(effects)), labels_(std::move(labels)) {
    if (effects_.empty()) throw Error(ErrorKind::validation, "POVM has no effects");
    if (labels_.size() != effects_.size()) {
        throw Error(ErrorKind::validation, "POVM label count does not match effect count");
    }
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
        throw Error(ErrorKind::validation, "POVM labels are not distinct");
    }
    const std::size_t d = effects_.front().dim();
    ComplexMatrix sum(d, d);
    for (const auto &e : effects_) {
        if (e.dim() != d) throw Error(ErrorKind::dimension, "POVM effects differ in dimension");
        sum += e.matrix();
    }
    const double defect = max_abs_diff(sum, ComplexMatrix::identity(d));
    if (defect > tol.complete) {
        throw Error(ErrorKind::validation,
                    "POVM effects do not sum to identity (defect " + std::to_string(defect) + ")");
    }
}

namespace {
std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return labels;
}
} // namespace

Povm::Povm(std::vector<Effect> effects, const Tolerances &tol)
    : Povm(effects, index_labels(effects.size()), tol) {}

std::size_t Povm::index_of(const std::string &label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    throw Error(ErrorKind::validation, "unknown outcome label '" + label + "'");
}

UnitaryOperator::UnitaryOperator(const ComplexMatrix &m, const Tolerances &tol) : m_(m) {
    require_square_dim(m, "unitary");
    const double defect = max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.rows()));
    if (defect > tol.unitary) {
        throw Error(ErrorKind::validation,
                    "matrix is not unitary (defect " + std::to_string(defect) + ")");
    }
}

Povm unsharp_qubit_povm(double eta, double nx, double ny, double nz) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error(ErrorKind::validation, "sharpness must lie in [0, 1]");
    }
    const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (std::abs(norm - 1.0) > 1e-12) {
        throw Error(ErrorKind::validation, "Bloch axis must be a unit vector");
    }
    const ComplexMatrix n_sigma =
        cplx(nx) * pauli::x() + cplx(ny) * pauli::y() + cplx(nz) * pauli::z();
    const ComplexMatrix id = ComplexMatrix::identity(2);
    return Povm({Effect(0.5 * (id + cplx(eta) * n_sigma)),
                 Effect(0.5 * (id - cplx(eta) * n_sigma))},
                {"+", "-"});
}

Povm unsharp_z_povm(double eta) { return unsharp_qubit_povm(eta, 0.0, 0.0, 1.0); }

Povm basis_povm(const UnitaryOperator &basis) {
    std::vector<Effect> effects;
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        effects.emplace_back(ComplexMatrix::projector(basis.matrix().column(k)));
    }
    return Povm(std::move(effects));
}

UnitaryOperator cnot() {
    return UnitaryOperator(
        ComplexMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
}

} // namespace qmeas
