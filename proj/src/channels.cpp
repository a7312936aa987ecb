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

#include "qmeas/channels.hpp"

#include <cmath>
#include <set>
#include <tuple>

#include "qmeas/errors.hpp"
#include "qmeas/linalg.hpp"

namespace qmeas {

namespace {

std::pair<std::size_t, std::size_t> common_shape(std::span<const ComplexMatrix> ops) {
    if (ops.empty()) throw Error(ErrorKind::validation, "empty Kraus list");
    const std::size_t rows = ops.front().rows();
    const std::size_t cols = ops.front().cols();
    for (const auto &k : ops) {
        if (k.rows() != rows || k.cols() != cols) {
            throw Error(ErrorKind::dimension, "Kraus operators differ in shape");
        }
        if (!all_finite(k)) throw Error(ErrorKind::validation, "non-finite Kraus operator");
    }
    return {cols, rows};
}

ComplexMatrix gram_sum(std::span<const ComplexMatrix> ops, std::size_t d_in) {
    ComplexMatrix s(d_in, d_in);
    for (const auto &k : ops) s += k.adjoint() * k;
    return s;
}

void require_trace_preserving(const ComplexMatrix &gram, double tol, const char *what) {
    const double defect = max_abs_diff(gram, ComplexMatrix::identity(gram.rows()));
    if (defect > tol) {
        throw Error(ErrorKind::validation, std::string(what) +
                                               " is not trace preserving (defect " +
                                               std::to_string(defect) + ")");
    }
}

} // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops, const Tolerances &tol)
    : ops_(std::move(ops)) {
    std::tie(d_in_, d_out_) = common_shape(ops_);
    require_trace_preserving(gram_sum(ops_, d_in_), tol.complete, "Kraus channel");
}

KrausChannel KrausChannel::identity(std::size_t dim) {
    return KrausChannel({ComplexMatrix::identity(dim)});
}

KrausChannel KrausChannel::unitary(const UnitaryOperator &u) {
    return KrausChannel({u.matrix()});
}

Instrument::Instrument(std::vector<Branch> branches, const Tolerances &tol)
    : branches_(std::move(branches)) {
    if (branches_.empty()) throw Error(ErrorKind::validation, "instrument has no branches");
    std::set<std::string> seen;
    std::vector<ComplexMatrix> all;
    for (const auto &b : branches_) {
        if (!seen.insert(b.label).second) {
            throw Error(ErrorKind::validation, "duplicate instrument label '" + b.label + "'");
        }
        if (b.ops.empty()) {
            throw Error(ErrorKind::validation, "branch '" + b.label + "' has no Kraus operators");
        }
        all.insert(all.end(), b.ops.begin(), b.ops.end());
    }
    std::tie(d_in_, d_out_) = common_shape(all);
    require_trace_preserving(gram_sum(all, d_in_), tol.complete, "instrument");
}

Instrument Instrument::identity(std::size_t dim) {
    return Instrument({{"id", {ComplexMatrix::identity(dim)}}});
}

std::vector<std::string> Instrument::labels() const {
    std::vector<std::string> out;
    for (const auto &b : branches_) out.push_back(b.label);
    return out;
}

std::size_t Instrument::index_of(const std::string &label) const {
    for (std::size_t i = 0; i < branches_.size(); ++i)
        if (branches_[i].label == label) return i;
    throw Error(ErrorKind::validation, "unknown outcome label '" + label + "'");
}

ChoiMatrix::ChoiMatrix(const ComplexMatrix &m, std::size_t d_in, std::size_t d_out,
                       double psd_tol)
    : d_in_(d_in), d_out_(d_out) {
    if (!m.is_square() || m.rows() != d_in * d_out) {
        throw Error(ErrorKind::dimension, "Choi matrix size does not match d_in * d_out");
    }
    if (hermiticity_defect(m) > 1e-9) {
        throw Error(ErrorKind::validation, "Choi matrix is not Hermitian");
    }
    m_ = hermitian_part(m);
    const double lo = min_eigenvalue(m_);
    if (lo < -psd_tol) {
        throw Error(ErrorKind::positivity,
                    "Choi matrix has eigenvalue " + std::to_string(lo) + " (map is not CP)");
    }
}

ComplexMatrix apply_kraus(std::span<const ComplexMatrix> ops, const ComplexMatrix &x) {
    if (ops.empty()) throw Error(ErrorKind::validation, "empty Kraus list");
    if (!x.is_square() || x.rows() != ops.front().cols()) {
        throw Error(ErrorKind::dimension, "operand does not match channel input dimension");
    }
    ComplexMatrix out(ops.front().rows(), ops.front().rows());
    for (const auto &k : ops) out += k * x * k.adjoint();
    return out;
}

ComplexMatrix pullback_kraus(std::span<const ComplexMatrix> ops, const ComplexMatrix &f) {
    if (ops.empty()) throw Error(ErrorKind::validation, "empty Kraus list");
    if (!f.is_square() || f.rows() != ops.front().rows()) {
        throw Error(ErrorKind::dimension, "effect does not match channel output dimension");
    }
    ComplexMatrix out(ops.front().cols(), ops.front().cols());
    for (const auto &k : ops) out += k.adjoint() * f * k;
    return out;
}

DensityOperator apply(const KrausChannel &ch, const DensityOperator &rho) {
    return DensityOperator(apply_kraus(ch.ops(), rho.matrix()));
}

Effect pullback_effect(const KrausChannel &ch, const Effect &f) {
    return Effect(pullback_kraus(ch.ops(), f.matrix()));
}

KrausChannel detector_channel(const UnitaryOperator &u, const DensityOperator &sigma_a) {
    const std::size_t da = sigma_a.dim();
    if (u.dim() % da != 0) {
        throw Error(ErrorKind::dimension, "coupling dimension is not a multiple of d_A");
    }
    const std::size_t ds = u.dim() / da;
    const auto eig = eig_hermitian(sigma_a.matrix());
    std::vector<ComplexMatrix> ops;
    for (std::size_t m = 0; m < da; ++m) {
        const double p = eig.values[m];
        if (p <= 1e-15) continue;
        const double amp = std::sqrt(p);
        for (std::size_t s_out = 0; s_out < ds; ++s_out) {
            // K[a, s] = sqrt(p) sum_b U[(s_out, a), (s, b)] phi_m[b]
            ComplexMatrix k(da, ds);
            for (std::size_t a = 0; a < da; ++a)
                for (std::size_t s = 0; s < ds; ++s) {
                    cplx acc = 0.0;
                    for (std::size_t b = 0; b < da; ++b)
                        acc += u.matrix()(s_out * da + a, s * da + b) * eig.vectors(b, m);
                    k(a, s) = amp * acc;
                }
            ops.push_back(std::move(k));
        }
    }
    return KrausChannel(std::move(ops));
}

Povm induced_povm(const UnitaryOperator &u, const DensityOperator &sigma_a,
                  const Povm &readout) {
    const std::size_t da = readout.dim();
    if (sigma_a.dim() != da) {
        throw Error(ErrorKind::dimension, "apparatus state and readout differ in dimension");
    }
    if (u.dim() % da != 0) {
        throw Error(ErrorKind::dimension, "coupling dimension is not a multiple of d_A");
    }
    const std::size_t ds = u.dim() / da;
    const ComplexMatrix &um = u.matrix();
    const ComplexMatrix udag = um.adjoint();
    const ComplexMatrix id_s = ComplexMatrix::identity(ds);

    std::vector<ComplexMatrix> lifted;
    for (const auto &f : readout.effects()) lifted.push_back(tensor_product(id_s, f.matrix()));

    std::vector<ComplexMatrix> effects(readout.size(), ComplexMatrix(ds, ds));
    for (std::size_t a = 0; a < ds; ++a)
        for (std::size_t b = 0; b < ds; ++b) {
            const ComplexMatrix joint =
                um * tensor_product(ComplexMatrix::unit(ds, b, a), sigma_a.matrix()) * udag;
            for (std::size_t i = 0; i < readout.size(); ++i)
                effects[i](a, b) = trace_of_product(joint, lifted[i]);
        }

    std::vector<Effect> out;
    for (auto &e : effects) out.emplace_back(e);
    return Povm(std::move(out),
                std::vector<std::string>(readout.labels().begin(), readout.labels().end()));
}

Instrument luders_instrument(const Povm &p) {
    std::vector<Instrument::Branch> branches;
    for (std::size_t i = 0; i < p.size(); ++i) {
        branches.push_back({p.labels()[i], {sqrt_psd(p[i].matrix())}});
    }
    return Instrument(std::move(branches));
}

KrausChannel total_channel(const Instrument &ins) {
    std::vector<ComplexMatrix> all;
    for (const auto &b : ins.branches()) all.insert(all.end(), b.ops.begin(), b.ops.end());
    return KrausChannel(std::move(all));
}

Povm induced_povm(const Instrument &ins) {
    std::vector<Effect> effects;
    for (const auto &b : ins.branches()) {
        effects.emplace_back(gram_sum(b.ops, ins.d_in()));
    }
    return Povm(std::move(effects), ins.labels());
}

std::vector<double> instrument_probabilities(const Instrument &ins,
                                             const DensityOperator &rho) {
    if (rho.dim() != ins.d_in()) {
        throw Error(ErrorKind::dimension, "state does not match instrument input dimension");
    }
    std::vector<double> p;
    double total = 0.0;
    for (const auto &b : ins.branches()) {
        double pf = 0.0;
        for (const auto &k : b.ops)
            pf += trace_of_product(k.adjoint() * k, rho.matrix()).real();
        p.push_back(pf);
        total += pf;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw Error(ErrorKind::validation,
                    "instrument probabilities sum to " + std::to_string(total));
    }
    return p;
}

DensityOperator instrument_update(const Instrument &ins, const DensityOperator &rho,
                                  const std::string &label) {
    if (rho.dim() != ins.d_in()) {
        throw Error(ErrorKind::dimension, "state does not match instrument input dimension");
    }
    const auto &branch = ins[ins.index_of(label)];
    ComplexMatrix out = apply_kraus(branch.ops, rho.matrix());
    const double p = out.trace().real();
    if (p <= 1e-12) {
        throw Error(ErrorKind::conditioning,
                    "cannot condition on outcome '" + label + "' with probability " +
                        std::to_string(p));
    }
    out *= 1.0 / p;
    return DensityOperator(hermitian_part(out));
}

ChoiMatrix choi_of_branch(std::span<const ComplexMatrix> ops) {
    const auto [d_in, d_out] = common_shape(ops);
    ComplexMatrix c(d_in * d_out, d_in * d_out);
    std::vector<cplx> vec(d_in * d_out);
    for (const auto &k : ops) {
        for (std::size_t i = 0; i < d_in; ++i)
            for (std::size_t a = 0; a < d_out; ++a) vec[i * d_out + a] = k(a, i);
        c += ComplexMatrix::projector(vec);
    }
    return ChoiMatrix(c, d_in, d_out);
}

std::vector<ComplexMatrix> branch_of_choi(const ChoiMatrix &c) {
    const auto eig = eig_hermitian(c.matrix());
    if (eig.values.front() < -1e-9) {
        throw Error(ErrorKind::positivity, "Choi matrix has a negative eigenvalue");
    }
    const double cutoff = 1e-14 * std::max(1.0, eig.values.back());
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = eig.values.size(); k-- > 0;) {
        if (eig.values[k] <= cutoff) break;
        const double amp = std::sqrt(eig.values[k]);
        ComplexMatrix op(c.d_out(), c.d_in());
        for (std::size_t i = 0; i < c.d_in(); ++i)
            for (std::size_t a = 0; a < c.d_out(); ++a)
                op(a, i) = amp * eig.vectors(i * c.d_out() + a, k);
        ops.push_back(std::move(op));
    }
    if (ops.empty()) ops.push_back(ComplexMatrix(c.d_out(), c.d_in()));
    return ops;
}

ComplexMatrix apply_choi(const ChoiMatrix &c, const ComplexMatrix &x) {
    const std::size_t d_in = c.d_in();
    const std::size_t d_out = c.d_out();
    if (!x.is_square() || x.rows() != d_in) {
        throw Error(ErrorKind::dimension, "operand does not match Choi input dimension");
    }
    ComplexMatrix out(d_out, d_out);
    for (std::size_t i = 0; i < d_in; ++i)
        for (std::size_t j = 0; j < d_in; ++j) {
            const cplx xij = x(i, j);
            if (xij == cplx{}) continue;
            for (std::size_t a = 0; a < d_out; ++a)
                for (std::size_t b = 0; b < d_out; ++b)
                    out(a, b) += xij * c.matrix()(i * d_out + a, j * d_out + b);
        }
    return out;
}

KrausChannel dephasing_channel(const UnitaryOperator &basis, double strength) {
    if (!(strength >= 0.0 && strength <= 1.0)) {
        throw Error(ErrorKind::validation, "dephasing strength must lie in [0, 1]");
    }
    const std::size_t d = basis.dim();
    std::vector<ComplexMatrix> ops;
    if (strength < 1.0) {
        ops.push_back(ComplexMatrix::identity(d) * cplx(std::sqrt(1.0 - strength)));
    }
    if (strength > 0.0) {
        for (std::size_t k = 0; k < d; ++k) {
            ops.push_back(ComplexMatrix::projector(basis.matrix().column(k)) *
                          cplx(std::sqrt(strength)));
        }
    }
    return KrausChannel(std::move(ops));
}

} // namespace qmeas
