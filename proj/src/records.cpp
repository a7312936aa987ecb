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

#include "qmeas/records.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "qmeas/errors.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/random.hpp"

namespace qmeas {

std::uint64_t EventLog::count(const std::string &label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return counts[i];
    throw Error(ErrorKind::validation, "unknown outcome label '" + label + "'");
}

EventLog &EventLog::merge(const EventLog &other) {
    if (labels != other.labels || seed != other.seed) {
        throw Error(ErrorKind::validation, "cannot merge event logs of different experiments");
    }
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    shots += other.shots;
    return *this;
}

namespace {

constexpr double negligible = 1e-15;

// Cumulative distribution with sub-1e-15 outcomes removed. The last entry
// is the (renormalising) total.
std::vector<double> sampling_cdf(const std::vector<double> &p) {
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > negligible) acc += p[i];
        cdf[i] = acc;
    }
    return cdf;
}

std::size_t draw(const std::vector<double> &cdf, double u) {
    const double target = u * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    if (it == cdf.end()) --it;
    // Skip zero-width entries that share the CDF value of their predecessor.
    std::size_t i = static_cast<std::size_t>(it - cdf.begin());
    while (i > 0 && cdf[i] == cdf[i - 1] && i + 1 < cdf.size()) ++i;
    return i;
}

std::size_t worker_count(std::uint64_t work) {
    const std::uint64_t hw = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<std::size_t>(std::min<std::uint64_t>(hw, std::max<std::uint64_t>(1, work / 20000)));
}

} // namespace

EventLog sample_runs(const Instrument &ins, const DensityOperator &rho, std::uint64_t seed,
                     std::uint64_t first_run, std::uint64_t runs) {
    const auto cdf = sampling_cdf(instrument_probabilities(ins, rho));
    if (!(cdf.back() > 0.0)) throw Error(ErrorKind::validation, "no outcome has positive probability");
    EventLog log{ins.labels(), std::vector<std::uint64_t>(ins.size(), 0), runs, seed};
    for (std::uint64_t r = first_run; r < first_run + runs; ++r) {
        CounterRng rng(seed, r);
        ++log.counts[draw(cdf, rng.uniform())];
    }
    return log;
}

EventLog sample(const Instrument &ins, const DensityOperator &rho, std::uint64_t shots,
                std::uint64_t seed) {
    if (shots < 1) throw Error(ErrorKind::validation, "shots must be >= 1");
    const std::size_t workers = worker_count(shots);
    if (workers <= 1) return sample_runs(ins, rho, seed, 0, shots);

    std::vector<EventLog> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (shots + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::uint64_t begin = std::min<std::uint64_t>(shots, w * chunk);
                const std::uint64_t end = std::min<std::uint64_t>(shots, begin + chunk);
                parts[w] = sample_runs(ins, rho, seed, begin, end - begin);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) t.join();
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);
    EventLog total = parts.front();
    for (std::size_t w = 1; w < workers; ++w) total.merge(parts[w]);
    return total;
}

std::map<std::vector<std::uint32_t>, std::uint64_t> RecordSequence::joint_counts() const {
    std::map<std::vector<std::uint32_t>, std::uint64_t> out;
    for (const auto &run : outcomes) ++out[run];
    return out;
}

RecordSequence sample_sequential(std::span<const Instrument> chain, const DensityOperator &rho,
                                 std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw Error(ErrorKind::validation, "shots must be >= 1");
    if (chain.empty()) throw Error(ErrorKind::validation, "empty instrument chain");
    if (chain.front().d_in() != rho.dim()) {
        throw Error(ErrorKind::dimension, "state does not match the first instrument");
    }
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        if (chain[k].d_out() != chain[k + 1].d_in()) {
            throw Error(ErrorKind::dimension, "instrument chain dimensions do not match");
        }
    }

    // Conditional states depend only on the outcome prefix; cache them.
    struct Node {
        std::vector<double> cdf;
        std::vector<std::optional<DensityOperator>> next;
    };
    std::map<std::vector<std::uint32_t>, Node> cache;
    auto node_for = [&](const std::vector<std::uint32_t> &prefix,
                        const DensityOperator &state) -> Node & {
        auto it = cache.find(prefix);
        if (it != cache.end()) return it->second;
        const auto &ins = chain[prefix.size()];
        Node node{sampling_cdf(instrument_probabilities(ins, state)), {}};
        node.next.resize(ins.size());
        return cache.emplace(prefix, std::move(node)).first->second;
    };

    RecordSequence seq;
    seq.seed = seed;
    for (const auto &ins : chain) seq.labels.push_back(ins.labels());
    seq.outcomes.reserve(shots);
    for (std::uint64_t r = 0; r < shots; ++r) {
        CounterRng rng(seed, r);
        std::vector<std::uint32_t> prefix;
        DensityOperator state = rho;
        for (std::size_t step = 0; step < chain.size(); ++step) {
            Node &node = node_for(prefix, state);
            const std::size_t i = draw(node.cdf, rng.uniform());
            if (step + 1 < chain.size()) {
                if (!node.next[i]) {
                    node.next[i] = instrument_update(chain[step], state, chain[step][i].label);
                }
                state = *node.next[i];
            }
            prefix.push_back(static_cast<std::uint32_t>(i));
        }
        seq.outcomes.push_back(std::move(prefix));
    }
    return seq;
}

std::vector<BornComparison> compare_to_born(const EventLog &log, const Instrument &ins,
                                            const DensityOperator &rho) {
    if (log.shots < 100) throw Error(ErrorKind::validation, "compare_to_born needs >= 100 shots");
    if (log.labels != ins.labels()) {
        throw Error(ErrorKind::validation, "event log labels do not match the instrument");
    }
    const auto p = instrument_probabilities(ins, rho);
    const double n = static_cast<double>(log.shots);
    std::vector<BornComparison> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        BornComparison c{log.labels[i], log.counts[i], log.frequency(i), p[i], 0.0, false};
        const double expected = n * p[i];
        if (p[i] < negligible || p[i] > 1.0 - negligible) {
            c.degenerate = true;
            const double target = p[i] < negligible ? 0.0 : n;
            const double diff = static_cast<double>(log.counts[i]) - target;
            c.z = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
        } else {
            c.z = (static_cast<double>(log.counts[i]) - expected) / std::sqrt(n * p[i] * (1.0 - p[i]));
        }
        out.push_back(std::move(c));
    }
    return out;
}

UnitaryOperator controlled_rotation(double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    return UnitaryOperator(ComplexMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, c, -s}, {0, 0, s, c}});
}

namespace {

// V = U (I_S (x) |0>_M): S -> S (x) M
ComplexMatrix coupling_isometry(const UnitaryOperator &u) {
    ComplexMatrix v(4, 2);
    for (std::size_t row = 0; row < 4; ++row)
        for (std::size_t s = 0; s < 2; ++s) v(row, s) = u.matrix()(row, s * 2);
    return v;
}

std::vector<std::pair<std::string, std::vector<cplx>>> measurement_basis(WignerBasis basis) {
    const double h = 1.0 / std::sqrt(2.0);
    if (basis == WignerBasis::bell) {
        return {{"Phi+", {h, 0, 0, h}},
                {"Phi-", {h, 0, 0, -h}},
                {"Psi+", {0, h, h, 0}},
                {"Psi-", {0, h, -h, 0}}};
    }
    return {{"00", {1, 0, 0, 0}}, {"01", {0, 1, 0, 0}}, {"10", {0, 0, 1, 0}}, {"11", {0, 0, 0, 1}}};
}

} // namespace

DensityOperator WignerFriendScenario::post_coupling_state() const {
    const ComplexMatrix joint = tensor_product(system_state.matrix(), ComplexMatrix::unit(2, 0, 0));
    return DensityOperator(friend_unitary.matrix() * joint * friend_unitary.matrix().adjoint());
}

WignerFriendScenario build_wigner_friend(const DensityOperator &system_state,
                                         WignerBasis wigner_basis, double theta) {
    if (system_state.dim() != 2) {
        throw Error(ErrorKind::dimension, "Wigner-friend system must be a qubit");
    }
    UnitaryOperator u = controlled_rotation(theta);
    const ComplexMatrix v = coupling_isometry(u);

    std::vector<Instrument::Branch> friend_branches;
    for (std::size_t m = 0; m < 2; ++m) {
        const ComplexMatrix record = tensor_product(ComplexMatrix::identity(2), ComplexMatrix::unit(2, m, m));
        friend_branches.push_back({std::to_string(m), {record * v}});
    }
    std::vector<Instrument::Branch> wigner_branches;
    for (const auto &[label, vec] : measurement_basis(wigner_basis)) {
        wigner_branches.push_back({label, {ComplexMatrix::projector(vec) * v}});
    }
    return WignerFriendScenario{system_state,
                                std::move(u),
                                Instrument(std::move(friend_branches)),
                                Instrument(std::move(wigner_branches)),
                                theta,
                                wigner_basis};
}

CompatReport scenario_verdict(const WignerFriendScenario &sc, const JointInstrumentOptions &opts) {
    return joint_instrument_feasibility(sc.wigner_instrument, sc.friend_instrument, opts);
}

} // namespace qmeas
