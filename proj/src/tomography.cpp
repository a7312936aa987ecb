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

#include "qmeas/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <thread>

#include "qmeas/born.hpp"
#include "qmeas/channels.hpp"
#include "qmeas/errors.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/random.hpp"
#include "qmeas/records.hpp"

namespace qmeas {

ProbeSet::ProbeSet(std::vector<DensityOperator> states, std::vector<std::string> names)
    : states_(std::move(states)), names_(std::move(names)) {
    if (states_.empty()) throw Error(ErrorKind::validation, "empty probe set");
    if (names_.size() != states_.size()) {
        throw Error(ErrorKind::validation, "probe names and states differ in number");
    }
    if (std::set<std::string>(names_.begin(), names_.end()).size() != names_.size()) {
        throw Error(ErrorKind::validation, "duplicate probe name");
    }
    const std::size_t d = states_.front().dim();
    std::vector<Effect> as_effects;
    for (const auto &s : states_) {
        if (s.dim() != d) throw Error(ErrorKind::dimension, "probes differ in dimension");
        as_effects.emplace_back(s.matrix());
    }
    if (psd_rank(effect_gram(as_effects)) != d * d) {
        throw Error(ErrorKind::rank, "probe states do not span the Hermitian operators");
    }
}

ProbeSet qubit_probes() {
    const double h = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    std::vector<std::vector<cplx>> kets = {{h, h},     {h, -h},    {h, h * i},
                                           {h, -h * i}, {1.0, 0.0}, {0.0, 1.0}};
    std::vector<DensityOperator> states;
    for (const auto &k : kets) states.push_back(DensityOperator::pure(k));
    return ProbeSet(std::move(states), {"+x", "-x", "+y", "-y", "+z", "-z"});
}

namespace {

std::vector<std::string> label_vector(const Povm &p) {
    return {p.labels().begin(), p.labels().end()};
}

void check_dims(const Povm &p, const ProbeSet &probes) {
    if (p.dim() != probes.dim()) throw Error(ErrorKind::dimension, "POVM and probes differ in dimension");
}

} // namespace

CountTable simulate_counts(const Povm &p, const ProbeSet &probes, std::uint64_t shots,
                           std::uint64_t seed) {
    check_dims(p, probes);
    const Instrument ins = luders_instrument(p);
    CountTable table{label_vector(p), {}, shots, false};
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const EventLog log = sample(ins, probes.states()[k], shots, mix64(seed ^ mix64(k + 1)));
        table.counts.emplace_back(log.counts.begin(), log.counts.end());
    }
    return table;
}

CountTable exact_counts(const Povm &p, const ProbeSet &probes, std::uint64_t shots) {
    check_dims(p, probes);
    CountTable table{label_vector(p), {}, shots, true};
    for (const auto &rho : probes.states()) {
        std::vector<double> row;
        for (const auto &e : p.effects()) row.push_back(static_cast<double>(shots) * born_prob(rho, e));
        table.counts.push_back(std::move(row));
    }
    return table;
}

PovmFit fit_povm(const CountTable &counts, const ProbeSet &probes) {
    const std::size_t m = probes.size();
    const std::size_t d = probes.dim();
    const std::size_t n_out = counts.labels.size();
    if (counts.counts.size() != m) throw Error(ErrorKind::dimension, "count table does not match the probes");
    if (n_out == 0) throw Error(ErrorKind::validation, "count table has no outcomes");

    const auto basis = hermitian_basis(d);
    const std::size_t n = basis.size();
    RealMatrix a(m, n);
    for (std::size_t k = 0; k < m; ++k) {
        const auto coords = hermitian_coordinates(probes.states()[k].matrix(), basis);
        for (std::size_t j = 0; j < n; ++j) a(k, j) = coords[j];
    }
    RealMatrix normal(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < m; ++k) s += a(k, i) * a(k, j);
            normal(i, j) = s;
        }

    std::vector<ComplexMatrix> est;
    for (std::size_t out = 0; out < n_out; ++out) {
        std::vector<double> rhs(n, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            const auto &row = counts.counts[k];
            if (row.size() != n_out) throw Error(ErrorKind::dimension, "ragged count table");
            double total = 0.0;
            for (double c : row) {
                if (!std::isfinite(c) || c < 0.0) throw Error(ErrorKind::validation, "counts must be non-negative");
                total += c;
            }
            if (!(total > 0.0)) throw Error(ErrorKind::validation, "probe with zero total count");
            const double f = row[out] / total;
            for (std::size_t j = 0; j < n; ++j) rhs[j] += a(k, j) * f;
        }
        const auto x = solve_linear(normal, rhs);
        est.push_back(hermitian_part(from_hermitian_coordinates(x, basis)));
    }

    const ComplexMatrix id = ComplexMatrix::identity(d);
    const cplx share(1.0 / static_cast<double>(n_out), 0.0);
    auto complete = [&](std::vector<ComplexMatrix> &es) {
        ComplexMatrix residual = id;
        for (const auto &e : es) residual -= e;
        const double size = max_abs_diff(residual, ComplexMatrix(d, d));
        for (auto &e : es) e += share * residual;
        return size;
    };
    complete(est);

    double excursion = 0.0;
    for (const auto &e : est) {
        const auto ev = eigvals_hermitian(e);
        excursion = std::max({excursion, -ev.front(), ev.back() - 1.0});
    }

    int rounds = 0;
    for (; rounds < 50; ++rounds) {
        for (auto &e : est) e = clip_spectrum(e, 0.0, 1.0);
        if (complete(est) < 1e-9) break;
    }

    // Completeness now holds; pull any remaining spectral excursion back by
    // mixing towards the trivial POVM I/n.
    double t = 0.0;
    const double flat = 1.0 / static_cast<double>(n_out);
    for (const auto &e : est) {
        const auto ev = eigvals_hermitian(e);
        if (ev.front() < 0.0) t = std::max(t, -ev.front() / (flat - ev.front()));
        if (ev.back() > 1.0) t = std::max(t, (ev.back() - 1.0) / (ev.back() - flat));
    }
    std::vector<Effect> effects;
    for (auto &e : est) {
        if (t > 0.0) e = (1.0 - t) * e + (t * flat) * id;
        effects.emplace_back(e);
    }
    return {Povm(std::move(effects), counts.labels), std::max(0.0, excursion), rounds};
}

double eta_from_povm(const Povm &p) {
    if (p.size() != 2 || p.dim() != 2) {
        throw Error(ErrorKind::validation, "sharpness needs a binary qubit POVM");
    }
    const auto labels = p.labels();
    const std::size_t plus = labels[1] == "+" ? 1 : 0;
    const ComplexMatrix diff = p[plus].matrix() - p[1 - plus].matrix();
    const double eta = 0.5 * trace_of_product(pauli::z(), diff).real();
    return std::clamp(eta, 0.0, 1.0);
}

namespace {

// Multinomial resample of one probe's row as a chain of binomials.
std::vector<double> resample_row(const std::vector<double> &row, CounterRng &rng) {
    double total = 0.0;
    for (double c : row) total += c;
    auto remaining = static_cast<std::int64_t>(std::llround(total));
    double mass = 1.0;
    std::vector<double> out(row.size(), 0.0);
    for (std::size_t i = 0; i < row.size(); ++i) {
        const double p = row[i] / total;
        if (i + 1 == row.size() || remaining == 0) {
            out[i] = static_cast<double>(remaining);
            remaining = 0;
            continue;
        }
        const double q = std::clamp(p / mass, 0.0, 1.0);
        std::binomial_distribution<std::int64_t> bin(remaining, q);
        const std::int64_t draw = bin(rng);
        out[i] = static_cast<double>(draw);
        remaining -= draw;
        mass -= p;
        if (mass <= 0.0) mass = 1e-300;
    }
    return out;
}

} // namespace

TomographyResult estimate_eta(const CountTable &counts, const ProbeSet &probes,
                              std::uint64_t seed, int bootstrap) {
    if (counts.labels.size() != 2) throw Error(ErrorKind::validation, "sharpness needs a binary POVM");
    Povm hat = reconstruct_povm(counts, probes);
    const double eta = eta_from_povm(hat);
    if (counts.exact || bootstrap < 2) {
        return {std::move(hat), eta, 0.0, counts.shots_per_probe, 0};
    }

    std::vector<double> etas(static_cast<std::size_t>(bootstrap));
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, static_cast<std::size_t>(bootstrap));
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t b = w; b < etas.size(); b += workers) {
                    CounterRng rng(seed, b);
                    CountTable re{counts.labels, {}, counts.shots_per_probe, false};
                    for (const auto &row : counts.counts) re.counts.push_back(resample_row(row, rng));
                    etas[b] = eta_from_povm(reconstruct_povm(re, probes));
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) t.join();
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);

    double mean = 0.0;
    for (double e : etas) mean += e;
    mean /= static_cast<double>(etas.size());
    double var = 0.0;
    for (double e : etas) var += (e - mean) * (e - mean);
    var /= static_cast<double>(etas.size() - 1);
    return {std::move(hat), eta, std::sqrt(var), counts.shots_per_probe, bootstrap};
}

} // namespace qmeas
