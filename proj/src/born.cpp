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

#include "qmeas/born.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmeas/errors.hpp"
#include "qmeas/linalg.hpp"

namespace qmeas {

double born_prob(const DensityOperator &rho, const Effect &e) {
    if (rho.dim() != e.dim()) {
        throw Error(ErrorKind::dimension, "state and effect differ in dimension");
    }
    const double p = trace_of_product(rho.matrix(), e.matrix()).real();
    if (p < -1e-10 || p > 1.0 + 1e-10) {
        throw Error(ErrorKind::validation, "Born probability " + std::to_string(p) +
                                               " lies outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

void validate_resolution(const ProjectorResolution &res) {
    if (res.empty()) throw Error(ErrorKind::validation, "empty projector resolution");
    const std::size_t d = res.front().rows();
    ComplexMatrix sum(d, d);
    for (std::size_t i = 0; i < res.size(); ++i) {
        const auto &p = res[i];
        if (!p.is_square() || p.rows() != d) {
            throw Error(ErrorKind::dimension, "resolution members differ in dimension");
        }
        if (hermiticity_defect(p) > 1e-9 || max_abs_diff(p * p, p) > 1e-9) {
            throw Error(ErrorKind::validation, "resolution member is not a projector");
        }
        for (std::size_t j = i + 1; j < res.size(); ++j) {
            if (max_abs_diff(p * res[j], ComplexMatrix(d, d)) > 1e-9) {
                throw Error(ErrorKind::validation, "resolution members are not orthogonal");
            }
        }
        sum += p;
    }
    if (max_abs_diff(sum, ComplexMatrix::identity(d)) > 1e-9) {
        throw Error(ErrorKind::validation, "resolution does not sum to the identity");
    }
}

double additivity_check(const DensityOperator &rho,
                        std::span<const ProjectorResolution> resolutions) {
    double worst = 0.0;
    for (const auto &res : resolutions) {
        validate_resolution(res);
        if (res.front().rows() != rho.dim()) {
            throw Error(ErrorKind::dimension, "resolution and state differ in dimension");
        }
        double total = 0.0;
        for (const auto &p : res) total += trace_of_product(rho.matrix(), p).real();
        worst = std::max(worst, std::abs(total - 1.0));
    }
    return worst;
}

ProjectorResolution random_resolution(std::size_t dim, CounterRng &rng) {
    const ComplexMatrix u = haar_unitary(dim, rng);
    ProjectorResolution res;
    for (std::size_t k = 0; k < dim; ++k) res.push_back(ComplexMatrix::projector(u.column(k)));
    return res;
}

Povm ic_effects_qubit() {
    const double s = 1.0 / std::sqrt(3.0);
    const double axes[4][3] = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    const ComplexMatrix id = ComplexMatrix::identity(2);
    std::vector<Effect> effects;
    for (const auto &n : axes) {
        const ComplexMatrix n_sigma =
            cplx(n[0]) * pauli::x() + cplx(n[1]) * pauli::y() + cplx(n[2]) * pauli::z();
        effects.emplace_back(0.25 * (id + n_sigma));
    }
    return Povm(std::move(effects), {"t0", "t1", "t2", "t3"});
}

RealMatrix effect_gram(std::span<const Effect> effects) {
    RealMatrix g(effects.size(), effects.size());
    for (std::size_t i = 0; i < effects.size(); ++i)
        for (std::size_t j = 0; j < effects.size(); ++j)
            g(i, j) = trace_of_product(effects[i].matrix(), effects[j].matrix()).real();
    return g;
}

std::vector<Effect> ic_projectors(std::size_t dim, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<Effect> effects;
    for (std::size_t k = 0; k < dim * dim; ++k) {
        effects.emplace_back(ComplexMatrix::projector(random_pure_state(dim, rng)));
    }
    if (psd_rank(effect_gram(effects)) != dim * dim) {
        throw Error(ErrorKind::rank, "random projector family is not informationally complete");
    }
    return effects;
}

FrameSample::FrameSample(Effect e, double p) : effect(std::move(e)), probability(p) {
    if (!std::isfinite(p) || p < -1e-12 || p > 1.0 + 1e-12) {
        throw Error(ErrorKind::validation, "frame sample probability outside [0, 1]");
    }
}

ReconstructionReport reconstruct_state(std::span<const FrameSample> samples) {
    if (samples.empty()) throw Error(ErrorKind::rank, "no frame samples");
    const std::size_t d = samples.front().effect.dim();
    const auto basis = hermitian_basis(d);
    const std::size_t n = basis.size();
    const std::size_t m = samples.size();

    // Design matrix A[k][j] = Tr(B_j E_k).
    RealMatrix a(m, n);
    std::vector<double> p(m);
    std::vector<Effect> effects;
    for (std::size_t k = 0; k < m; ++k) {
        if (samples[k].effect.dim() != d) {
            throw Error(ErrorKind::dimension, "frame samples differ in dimension");
        }
        effects.push_back(samples[k].effect);
        const auto coords = hermitian_coordinates(samples[k].effect.matrix(), basis);
        for (std::size_t j = 0; j < n; ++j) a(k, j) = coords[j];
        p[k] = samples[k].probability;
    }
    if (psd_rank(effect_gram(effects)) < n) {
        throw Error(ErrorKind::rank, "effect family does not span the Hermitian operators");
    }

    // KKT system [[A^T A, c], [c^T, 0]] [x; mu] = [A^T p; 1], c = coords(I).
    const auto c = hermitian_coordinates(ComplexMatrix::identity(d), basis);
    RealMatrix kkt(n + 1, n + 1);
    std::vector<double> rhs(n + 1);
    RealMatrix normal(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < m; ++k) s += a(k, i) * a(k, j);
            kkt(i, j) = s;
            normal(i, j) = s;
        }
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) s += a(k, i) * p[k];
        rhs[i] = s;
        kkt(i, n) = c[i];
        kkt(n, i) = c[i];
    }
    rhs[n] = 1.0;
    const auto sol = solve_linear(kkt, rhs);

    const auto normal_eigs = eigvals_symmetric(normal);
    const double condition = normal_eigs.back() / std::max(normal_eigs.front(), 1e-300);

    ComplexMatrix est = from_hermitian_coordinates(std::span(sol).first(n), basis);
    est = project_psd(est);
    est *= 1.0 / est.trace().real();
    DensityOperator rho_hat(est);

    double residual = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double pk = trace_of_product(rho_hat.matrix(), effects[k].matrix()).real();
        residual = std::max(residual, std::abs(pk - p[k]));
    }
    return {std::move(rho_hat), residual, condition};
}

} // namespace qmeas
