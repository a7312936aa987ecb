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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qmeas/born.hpp"
#include "qmeas/errors.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/records.hpp"

using namespace qmeas;

namespace {

DensityOperator plus_state() {
    const double h = 1.0 / std::sqrt(2.0);
    return DensityOperator::pure(std::vector<cplx>{h, h});
}

} // namespace

TEST_CASE("sampling is reproducible from the seed") {
    const Instrument ins = luders_instrument(unsharp_z_povm(0.5));
    const auto rho = plus_state();
    const EventLog a = sample(ins, rho, 50000, 17);
    const EventLog b = sample(ins, rho, 50000, 17);
    const EventLog c = sample(ins, rho, 50000, 18);
    CHECK(a.counts == b.counts);
    CHECK(a.counts != c.counts);
    CHECK(a.shots == 50000);
    CHECK(a.counts[0] + a.counts[1] == 50000);
    CHECK(a.count("+") == a.counts[0]);
    CHECK_THROWS_AS((void)a.count("?"), Error);
}

TEST_CASE("parallel sampling equals the run-by-run draw") {
    const Instrument ins = luders_instrument(ic_effects_qubit());
    CounterRng rng(1);
    const DensityOperator rho(random_density_matrix(2, rng));
    const EventLog par = sample(ins, rho, 200001, 5);
    const EventLog seq = sample_runs(ins, rho, 5, 0, 200001);
    CHECK(par.counts == seq.counts);
    EventLog split = sample_runs(ins, rho, 5, 0, 70000);
    split.merge(sample_runs(ins, rho, 5, 70000, 130001));
    CHECK(split.counts == seq.counts);
    CHECK_THROWS_AS(split.merge(sample_runs(ins, rho, 6, 0, 10)), Error);
}

TEST_CASE("zero shots is a validation error") {
    const Instrument ins = luders_instrument(unsharp_z_povm(1.0));
    try {
        (void)sample(ins, plus_state(), 0, 0);
        FAIL("expected validation error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::validation);
    }
}

TEST_CASE("unsharp POVM counts agree with Born probabilities") {
    const auto zero = DensityOperator::basis_state(2, 0);
    for (double eta : {0.0, 0.5, 0.9}) {
        CAPTURE(eta);
        const Instrument ins = luders_instrument(unsharp_z_povm(eta));
        for (const auto &rho : {zero, plus_state()}) {
            const EventLog log = sample(ins, rho, 100000, 3);
            for (const auto &c : compare_to_born(log, ins, rho)) CHECK(std::abs(c.z) < 5);
        }
        // Binomial 6-sigma band around (1 + eta)/2 on |0>.
        const EventLog log = sample(ins, zero, 100000, 4);
        const double p = 0.5 * (1 + eta);
        CHECK(std::abs(static_cast<double>(log.counts[0]) - 1e5 * p) < 6 * std::sqrt(1e5 * p * (1 - p)));
    }
}

TEST_CASE("wrong-state control is detected") {
    const Instrument ins = luders_instrument(unsharp_z_povm(0.9));
    const EventLog log = sample(ins, DensityOperator::basis_state(2, 1), 100000, 9);
    double worst = 0;
    for (const auto &c : compare_to_born(log, ins, DensityOperator::basis_state(2, 0)))
        worst = std::max(worst, std::abs(c.z));
    CHECK(worst > 10);
}

TEST_CASE("degenerate outcomes are checked exactly") {
    const Instrument ins = luders_instrument(unsharp_z_povm(1.0));
    const auto zero = DensityOperator::basis_state(2, 0);
    const EventLog log = sample(ins, zero, 1000, 1);
    CHECK(log.counts[0] == 1000);
    CHECK(log.counts[1] == 0);
    const auto cmp = compare_to_born(log, ins, zero);
    CHECK(cmp[0].degenerate);
    CHECK(cmp[1].degenerate);
    CHECK(cmp[0].z == 0.0);
    EventLog tampered = log;
    tampered.counts = {999, 1};
    CHECK(std::isinf(compare_to_born(tampered, ins, zero)[1].z));
    EventLog small = log;
    small.shots = 50;
    CHECK_THROWS_AS(compare_to_born(small, ins, zero), Error);
}

TEST_CASE("sequential Lueders records follow the closed-form joint law") {
    const oracle::Vec3 n{0, 0, 1}, m{1, 0, 0}, r{0.2, 0.1, 0.6};
    const double ea = 0.6, eb = 0.8;
    const std::vector<Instrument> chain{luders_instrument(unsharp_qubit_povm(ea, 0, 0, 1)),
                                        luders_instrument(unsharp_qubit_povm(eb, 1, 0, 0))};
    const ComplexMatrix rho_m =
        0.5 * (ComplexMatrix::identity(2) + cplx(r[0]) * pauli::x() + cplx(r[1]) * pauli::y() + cplx(r[2]) * pauli::z());
    const DensityOperator rho(rho_m);
    const std::uint64_t shots = 100000;
    const RecordSequence seq = sample_sequential(chain, rho, shots, 12);
    REQUIRE(seq.outcomes.size() == shots);
    const auto joint = seq.joint_counts();
    for (std::uint32_t i = 0; i < 2; ++i) {
        for (std::uint32_t j = 0; j < 2; ++j) {
            const double p = oracle::luders_pair_probability(i == 0 ? 1 : -1, j == 0 ? 1 : -1, ea, n, eb, m, r);
            const auto it = joint.find({i, j});
            const double count = it == joint.end() ? 0.0 : static_cast<double>(it->second);
            CHECK(std::abs(count - shots * p) < 5 * std::sqrt(shots * p * (1 - p)));
        }
    }
    const RecordSequence again = sample_sequential(chain, rho, 1000, 12);
    CHECK(std::equal(again.outcomes.begin(), again.outcomes.end(), seq.outcomes.begin()));

    const std::vector<Instrument> bad{chain[0], luders_instrument(basis_povm(UnitaryOperator(ComplexMatrix::identity(3))))};
    CHECK_THROWS_AS(sample_sequential(bad, rho, 10, 0), Error);
}

TEST_CASE("Wigner-friend scenario: coupling, probabilities and verdicts") {
    const auto sc = build_wigner_friend(plus_state());
    CHECK(sc.friend_instrument.d_in() == 2);
    CHECK(sc.friend_instrument.d_out() == 4);
    CHECK(sc.wigner_instrument.size() == 4);

    const double h = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> phi_plus{h, 0, 0, h};
    CHECK(max_abs_diff(sc.post_coupling_state().matrix(), ComplexMatrix::projector(phi_plus)) < 1e-15);

    const auto pw = instrument_probabilities(sc.wigner_instrument, sc.system_state);
    CHECK(pw[sc.wigner_instrument.index_of("Phi+")] == doctest::Approx(1.0).epsilon(1e-14));
    const auto pf = instrument_probabilities(sc.friend_instrument, sc.system_state);
    CHECK(pf[0] == doctest::Approx(0.5).epsilon(1e-14));

    // Friend's induced POVM is sharp z; Wigner's is sharp x (Phi+ / Psi- pattern).
    const Povm friend_povm = induced_povm(sc.friend_instrument);
    CHECK(max_abs_diff(friend_povm[0].matrix(), ComplexMatrix::unit(2, 0, 0)) < 1e-14);

    CHECK(scenario_verdict(sc).verdict == Verdict::incompatible);
    const auto control = build_wigner_friend(plus_state(), WignerBasis::computational);
    const CompatReport ok = scenario_verdict(control);
    CHECK(ok.verdict == Verdict::compatible);
    CHECK(ok.joint_instrument.has_value());
    CHECK(scenario_verdict(build_wigner_friend(plus_state(), WignerBasis::bell, 0.5)).verdict ==
          Verdict::compatible);
    CHECK_THROWS_AS(build_wigner_friend(DensityOperator::maximally_mixed(3)), Error);
}

TEST_CASE("controlled rotation at pi copies z into the memory") {
    const auto u = controlled_rotation(std::numbers::pi).matrix();
    CHECK(std::abs(u(3, 2) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(u(0, 0) - cplx(1.0)) < 1e-15);
}
