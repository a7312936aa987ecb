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

#include "qmeas/compat.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "qmeas/errors.hpp"
#include "qmeas/linalg.hpp"

namespace qmeas {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::compatible: return "compatible";
    case Verdict::incompatible: return "incompatible";
    case Verdict::undecided: return "undecided";
    }
    return "undecided";
}

JointPovmCandidate::JointPovmCandidate(std::vector<Effect> effects,
                                       std::vector<std::string> labels_a,
                                       std::vector<std::string> labels_b)
    : effects_(std::move(effects)), labels_a_(std::move(labels_a)),
      labels_b_(std::move(labels_b)) {
    if (effects_.empty() || effects_.size() != labels_a_.size() * labels_b_.size()) {
        throw Error(ErrorKind::dimension, "joint grid size does not match its label lists");
    }
    const std::size_t d = effects_.front().dim();
    ComplexMatrix sum(d, d);
    for (const auto &e : effects_) {
        if (e.dim() != d) throw Error(ErrorKind::dimension, "joint effects differ in dimension");
        sum += e.matrix();
    }
    if (max_abs_diff(sum, ComplexMatrix::identity(d)) > 1e-8) {
        throw Error(ErrorKind::validation, "joint effects do not sum to the identity");
    }
}

std::pair<Povm, Povm> marginals(const JointPovmCandidate &joint) {
    const std::size_t d = joint.effects().front().dim();
    Tolerances loose;
    loose.complete = 1e-8;
    loose.psd = 1e-9;
    std::vector<Effect> rows;
    for (std::size_t i = 0; i < joint.rows(); ++i) {
        ComplexMatrix s(d, d);
        for (std::size_t j = 0; j < joint.cols(); ++j) s += joint.at(i, j).matrix();
        rows.emplace_back(s, loose);
    }
    std::vector<Effect> cols;
    for (std::size_t j = 0; j < joint.cols(); ++j) {
        ComplexMatrix s(d, d);
        for (std::size_t i = 0; i < joint.rows(); ++i) s += joint.at(i, j).matrix();
        cols.emplace_back(s, loose);
    }
    return {Povm(std::move(rows),
                 std::vector<std::string>(joint.labels_a().begin(), joint.labels_a().end()), loose),
            Povm(std::move(cols),
                 std::vector<std::string>(joint.labels_b().begin(), joint.labels_b().end()), loose)};
}

Instrument JointInstrumentCandidate::to_instrument() const {
    std::vector<Instrument::Branch> branches;
    for (std::size_t f = 0; f < labels_f.size(); ++f)
        for (std::size_t w = 0; w < labels_w.size(); ++w)
            branches.push_back({labels_f[f] + "|" + labels_w[w], branch_of_choi(at(f, w))});

    // Clipping the blocks' slightly negative eigenvalues leaves a small
    // trace defect S - I; K -> K S^(-1/2) removes it.
    const std::size_t d_in = blocks.front().d_in();
    ComplexMatrix s(d_in, d_in);
    for (const auto &b : branches)
        for (const auto &k : b.ops) s += k.adjoint() * k;
    if (max_abs_diff(s, ComplexMatrix::identity(d_in)) > 1e-6) {
        throw Error(ErrorKind::validation, "joint instrument is not trace preserving");
    }
    const ComplexMatrix fix = apply_spectral(eig_hermitian(s), [](double x) { return 1.0 / std::sqrt(x); });
    for (auto &b : branches)
        for (auto &k : b.ops) k = k * fix;
    return Instrument(std::move(branches));
}

namespace {

/**
 * Feasibility of a grid X_{fw} of Hermitian blocks (n_rows x n_cols) with
 *   sum_w X_{fw} = row_target_f                       (block_dim square)
 *   col_map(sum_f X_{fw}) = col_target_w
 *   X_{fw} >= 0
 * where col_map is the identity, or Tr_out when the block is a Choi matrix on
 * d_in (x) d_out and only the outcome statistics are constrained.
 */
struct GridProblem {
    std::size_t n_rows;
    std::size_t n_cols;
    std::size_t block_dim;
    std::size_t d_out;  ///< 1: column constraint on the full block
    std::vector<ComplexMatrix> row_targets;
    std::vector<ComplexMatrix> col_targets;
};

struct GridResult {
    Verdict verdict;
    std::vector<ComplexMatrix> joint;
    int iterations;
    double gap;
    double residual;
    double min_eig;
};

using Grid = std::vector<ComplexMatrix>;

ComplexMatrix col_map(const GridProblem &pb, const ComplexMatrix &m) {
    if (pb.d_out == 1) return m;
    return partial_trace(m, pb.block_dim / pb.d_out, pb.d_out, Keep::first);
}

ComplexMatrix col_lift(const GridProblem &pb, const ComplexMatrix &m) {
    if (pb.d_out == 1) return m;
    return tensor_product(m, ComplexMatrix::identity(pb.d_out));
}

struct Defects {
    std::vector<ComplexMatrix> rows;  // R_f = target - sum_w X_fw
    std::vector<ComplexMatrix> cols;  // S_w = target - col_map(sum_f X_fw)
};

Defects marginal_defects(const GridProblem &pb, const Grid &x) {
    Defects d;
    for (std::size_t f = 0; f < pb.n_rows; ++f) {
        ComplexMatrix r = pb.row_targets[f];
        for (std::size_t w = 0; w < pb.n_cols; ++w) r -= x[f * pb.n_cols + w];
        d.rows.push_back(std::move(r));
    }
    for (std::size_t w = 0; w < pb.n_cols; ++w) {
        ComplexMatrix s(pb.block_dim, pb.block_dim);
        for (std::size_t f = 0; f < pb.n_rows; ++f) s += x[f * pb.n_cols + w];
        d.cols.push_back(pb.col_targets[w] - col_map(pb, s));
    }
    return d;
}

double max_entry(const Defects &d) {
    double m = 0.0;
    for (const auto &r : d.rows)
        for (const auto &v : r.data()) m = std::max(m, std::abs(v));
    for (const auto &c : d.cols)
        for (const auto &v : c.data()) m = std::max(m, std::abs(v));
    return m;
}

// Orthogonal projection onto the affine constraint set. The correction lies
// in the range of the adjoint constraint map, {Y_f + lift(Z_w)}, and has the
// closed form
//   dX_fw = R_f / n_cols + lift(S_w / (n_rows d_out) - T / (n_rows n_cols d_out)),
// with T = sum_w S_w = sum_f col_map(R_f) (averaged for roundoff symmetry).
Grid project_affine(const GridProblem &pb, const Grid &x) {
    const Defects d = marginal_defects(pb, x);
    const double nr = static_cast<double>(pb.n_rows);
    const double nc = static_cast<double>(pb.n_cols);
    const double dout = static_cast<double>(pb.d_out);

    const std::size_t col_dim = pb.col_targets.front().rows();
    ComplexMatrix t_cols(col_dim, col_dim);
    for (const auto &s : d.cols) t_cols += s;
    ComplexMatrix t_rows(col_dim, col_dim);
    for (const auto &r : d.rows) t_rows += col_map(pb, r);
    const ComplexMatrix t = 0.5 * (t_cols + t_rows);

    std::vector<ComplexMatrix> col_corr;
    for (const auto &s : d.cols) {
        col_corr.push_back(col_lift(pb, cplx(1.0 / (nr * dout)) * s -
                                            cplx(1.0 / (nr * nc * dout)) * t));
    }
    Grid out = x;
    for (std::size_t f = 0; f < pb.n_rows; ++f) {
        const ComplexMatrix row_corr = cplx(1.0 / nc) * d.rows[f];
        for (std::size_t w = 0; w < pb.n_cols; ++w) {
            auto &blk = out[f * pb.n_cols + w];
            blk += row_corr;
            blk += col_corr[w];
            blk = hermitian_part(blk);
        }
    }
    return out;
}

double grid_distance(const Grid &a, const Grid &b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double n = (a[k] - b[k]).frobenius_norm();
        s += n * n;
    }
    return std::sqrt(s);
}

double grid_min_eig(const Grid &g) {
    double m = INFINITY;
    for (const auto &blk : g) m = std::min(m, min_eigenvalue(blk));
    return m;
}

GridResult solve_grid(const GridProblem &pb, const FeasibilityOptions &opts) {
    if (opts.max_iter < 1 || opts.gap_window < 1 || !(opts.tol > 0.0)) {
        throw Error(ErrorKind::validation, "invalid feasibility options");
    }
    const std::size_t n_blocks = pb.n_rows * pb.n_cols;
    Grid x(n_blocks, ComplexMatrix(pb.block_dim, pb.block_dim));
    Grid q = x;  // Dykstra increment of the cone step
    // The affine set needs no increment: its projection ignores components
    // along the normal space, which is where the increment lives.
    std::deque<double> gaps;
    GridResult res{Verdict::undecided, {}, 0, INFINITY, INFINITY, -INFINITY};

    for (int it = 1; it <= opts.max_iter; ++it) {
        const Grid y = project_affine(pb, x);
        Grid shifted = y;
        for (std::size_t k = 0; k < n_blocks; ++k) shifted[k] += q[k];
        for (std::size_t k = 0; k < n_blocks; ++k) {
            x[k] = project_psd(shifted[k]);
            q[k] = shifted[k] - x[k];
        }
        const double gap = grid_distance(x, y);
        res.iterations = it;
        res.gap = gap;

        const double residual = max_entry(marginal_defects(pb, x));
        res.residual = residual;
        if (residual < opts.tol) {
            Grid z = project_affine(pb, x);
            const double lo = grid_min_eig(z);
            if (lo >= -opts.psd_tol) {
                res.verdict = Verdict::compatible;
                res.joint = std::move(z);
                res.min_eig = lo;
                return res;
            }
        }

        gaps.push_back(gap);
        if (gaps.size() > static_cast<std::size_t>(opts.gap_window)) {
            const double old = gaps.front();
            gaps.pop_front();
            if (gap > 10.0 * opts.tol && gap >= (1.0 - 1e-4) * old) {
                res.verdict = Verdict::incompatible;
                return res;
            }
        }
    }
    return res;
}

ComplexMatrix sum_of(const std::vector<ComplexMatrix> &ms) {
    ComplexMatrix s = ms.front();
    for (std::size_t k = 1; k < ms.size(); ++k) s += ms[k];
    return s;
}

} // namespace

CompatReport joint_povm_feasibility(const Povm &a, const Povm &b,
                                    const FeasibilityOptions &opts) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::dimension, "POVMs act on different dimensions");
    }
    for (const auto &la : a.labels())
        for (const auto &lb : b.labels())
            if (la.find('|') != std::string::npos || lb.find('|') != std::string::npos) {
                throw Error(ErrorKind::validation, "outcome labels may not contain '|'");
            }
    GridProblem pb{a.size(), b.size(), a.dim(), 1, {}, {}};
    for (const auto &e : a.effects()) pb.row_targets.push_back(e.matrix());
    for (const auto &e : b.effects()) pb.col_targets.push_back(e.matrix());

    const GridResult g = solve_grid(pb, opts);
    CompatReport rep;
    rep.verdict = g.verdict;
    rep.iterations = g.iterations;
    rep.tolerance = opts.tol;
    rep.marginal_residual = g.residual;
    if (g.verdict == Verdict::compatible) {
        rep.witness_margin = g.min_eig;
        Tolerances loose;
        loose.psd = opts.psd_tol;
        std::vector<Effect> effects;
        for (const auto &blk : g.joint) effects.emplace_back(blk, loose);
        rep.joint_povm.emplace(std::move(effects),
                               std::vector<std::string>(a.labels().begin(), a.labels().end()),
                               std::vector<std::string>(b.labels().begin(), b.labels().end()));
    } else {
        rep.witness_margin = g.gap;
    }
    return rep;
}

CompatReport joint_instrument_feasibility(const Instrument &first, const Instrument &second,
                                          const JointInstrumentOptions &opts) {
    if (first.d_in() != second.d_in() || first.d_out() != second.d_out()) {
        throw Error(ErrorKind::dimension, "instruments differ in input/output dimensions");
    }
    const std::size_t d_in = first.d_in();
    const std::size_t d_out = first.d_out();
    const bool channel_level = opts.second_marginal == MarginalLevel::channel;

    GridProblem pb{first.size(), second.size(), d_in * d_out, channel_level ? 1 : d_out, {}, {}};
    for (const auto &b : first.branches()) pb.row_targets.push_back(choi_of_branch(b.ops).matrix());
    for (const auto &b : second.branches()) {
        const ComplexMatrix c = choi_of_branch(b.ops).matrix();
        pb.col_targets.push_back(channel_level ? c : partial_trace(c, d_in, d_out, Keep::first));
    }

    CompatReport rep;
    rep.tolerance = opts.solver.tol;

    // Both marginal families must agree on the total: with channel-level
    // constraints that means equal total channels.
    const ComplexMatrix total_rows = col_map(pb, sum_of(pb.row_targets));
    const ComplexMatrix total_cols = sum_of(pb.col_targets);
    const double mismatch = max_abs_diff(total_rows, total_cols);
    if (mismatch > 1e-9) {
        rep.verdict = Verdict::incompatible;
        rep.witness_margin = (total_rows - total_cols).frobenius_norm();
        rep.marginal_residual = mismatch;
        return rep;
    }

    const GridResult g = solve_grid(pb, opts.solver);
    rep.verdict = g.verdict;
    rep.iterations = g.iterations;
    rep.marginal_residual = g.residual;
    if (g.verdict == Verdict::compatible) {
        rep.witness_margin = g.min_eig;
        JointInstrumentCandidate joint{first.labels(), second.labels(), {}};
        for (const auto &blk : g.joint) joint.blocks.emplace_back(blk, d_in, d_out, opts.solver.psd_tol);
        rep.joint_instrument = std::move(joint);
    } else {
        rep.witness_margin = g.gap;
    }
    return rep;
}

BoundaryEstimate sharpness_boundary(const BlochAxis &axis_a, const BlochAxis &axis_b,
                                    const BoundaryOptions &opts) {
    int probes = 0;
    auto verdict_at = [&](double eta) {
        ++probes;
        const Povm a = unsharp_qubit_povm(eta, axis_a[0], axis_a[1], axis_a[2]);
        const Povm b = unsharp_qubit_povm(eta, axis_b[0], axis_b[1], axis_b[2]);
        return joint_povm_feasibility(a, b, opts.solver).verdict;
    };

    if (verdict_at(1.0) == Verdict::compatible) return {1.0, 1.0, 1.0, probes};
    double lo = 0.0;  // trivial POVMs are always jointly measurable
    double hi = 1.0;
    auto absorb = [&](double eta, Verdict v) {
        if (v == Verdict::compatible) lo = std::max(lo, eta);
        if (v == Verdict::incompatible) hi = std::min(hi, eta);
        return v != Verdict::undecided;
    };
    while (hi - lo > opts.bracket_width) {
        const double mid = 0.5 * (lo + hi);
        if (absorb(mid, verdict_at(mid))) continue;
        const double quarter = 0.25 * (hi - lo);
        const double below = mid - quarter;
        const double above = mid + quarter;
        const bool got_below = absorb(below, verdict_at(below));
        const bool got_above = absorb(above, verdict_at(above));
        if (!got_below && !got_above) {
            throw Error(ErrorKind::undecided,
                        "solver undecided on both sides of eta = " + std::to_string(mid));
        }
    }
    return {0.5 * (lo + hi), lo, hi, probes};
}

} // namespace qmeas
