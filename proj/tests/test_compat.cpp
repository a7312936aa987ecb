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

#include "oracles.hpp"
#include "qmeas/compat.hpp"
#include "qmeas/errors.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/random.hpp"

using namespace qmeas;

namespace {

Verdict oracle_verdict(const oracle::Vec3 &a, const oracle::Vec3 &b) {
    switch (oracle::brute_force_joint(a, b)) {
    case oracle::Joint::compatible: return Verdict::compatible;
    case oracle::Joint::incompatible: return Verdict::incompatible;
    default: return Verdict::undecided;
    }
}

oracle::Vec3 scaled(double eta, const oracle::Vec3 &n) { return {eta * n[0], eta * n[1], eta * n[2]}; }

void check_joint(const CompatReport &r, const Povm &a, const Povm &b) {
    REQUIRE(r.joint_povm.has_value());
    const auto [ma, mb] = marginals(*r.joint_povm);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(max_abs_diff(ma[i].matrix(), a[i].matrix()) < 1e-6);
    for (std::size_t j = 0; j < b.size(); ++j) CHECK(max_abs_diff(mb[j].matrix(), b[j].matrix()) < 1e-6);
    for (const auto &g : r.joint_povm->effects()) CHECK(min_eigenvalue(g.matrix()) > -1e-9);
}

} // namespace

TEST_CASE("verdict names") {
    CHECK(to_string(Verdict::compatible) == "compatible");
    CHECK(to_string(Verdict::incompatible) == "incompatible");
    CHECK(to_string(Verdict::undecided) == "undecided");
}

TEST_CASE("solver agrees with the brute-force oracle on orthogonal axes") {
    const oracle::Vec3 z{0, 0, 1}, x{1, 0, 0};
    for (double eta : {0.5, 0.65, 0.75, 0.9}) {
        CAPTURE(eta);
        const Povm a = unsharp_qubit_povm(eta, 0, 0, 1);
        const Povm b = unsharp_qubit_povm(eta, 1, 0, 0);
        const CompatReport r = joint_povm_feasibility(a, b);
        CHECK(r.verdict == oracle_verdict(scaled(eta, z), scaled(eta, x)));
        if (r.verdict == Verdict::compatible) check_joint(r, a, b);
    }
}

TEST_CASE("solver agrees with the oracle on skew axes and unequal sharpness") {
    const double c = std::cos(1.0), s = std::sin(1.0);
    const oracle::Vec3 n{0, 0, 1}, m{s, 0, c};
    for (auto [ea, eb] : {std::pair{0.9, 0.4}, std::pair{0.8, 0.8}, std::pair{0.95, 0.9}, std::pair{0.6, 0.7}}) {
        CAPTURE(ea);
        CAPTURE(eb);
        const Povm a = unsharp_qubit_povm(ea, n[0], n[1], n[2]);
        const Povm b = unsharp_qubit_povm(eb, m[0], m[1], m[2]);
        const CompatReport r = joint_povm_feasibility(a, b);
        const Verdict expected = oracle_verdict(scaled(ea, n), scaled(eb, m));
        REQUIRE(expected != Verdict::undecided);
        CHECK(r.verdict == expected);
    }
}

TEST_CASE("commuting POVMs are compatible") {
    const Povm a = unsharp_z_povm(1.0);
    const Povm b = unsharp_z_povm(0.4);
    const CompatReport r = joint_povm_feasibility(a, b);
    CHECK(r.verdict == Verdict::compatible);
    check_joint(r, a, b);
    CHECK(r.joint_povm->at(0, 0).dim() == 2);
}

TEST_CASE("sharp Pauli z and x are incompatible with a positive gap") {
    const CompatReport r = joint_povm_feasibility(unsharp_z_povm(1.0), unsharp_qubit_povm(1.0, 1, 0, 0));
    CHECK(r.verdict == Verdict::incompatible);
    CHECK(r.witness_margin > 10 * r.tolerance);
    CHECK_FALSE(r.joint_povm.has_value());
}

TEST_CASE("an iteration cap too small to decide gives undecided") {
    FeasibilityOptions opts;
    opts.max_iter = 3;
    const CompatReport r = joint_povm_feasibility(unsharp_z_povm(0.72), unsharp_qubit_povm(0.72, 1, 0, 0), opts);
    CHECK(r.verdict == Verdict::undecided);
}

TEST_CASE("qutrit POVMs and dimension checks") {
    CounterRng rng(3);
    const Povm a = basis_povm(UnitaryOperator(haar_unitary(3, rng)));
    const Povm b = basis_povm(UnitaryOperator(haar_unitary(3, rng)));
    CHECK(joint_povm_feasibility(a, b).verdict == Verdict::incompatible);
    const Povm trivial({Effect(ComplexMatrix::identity(3))}, {"1"});
    CHECK(joint_povm_feasibility(a, trivial).verdict == Verdict::compatible);
    CHECK_THROWS_AS(joint_povm_feasibility(a, unsharp_z_povm(1.0)), Error);
}

TEST_CASE("labels containing the separator are rejected") {
    const Povm a({Effect(ComplexMatrix::unit(2, 0, 0)), Effect(ComplexMatrix::unit(2, 1, 1))}, {"a|b", "c"});
    CHECK_THROWS_AS(joint_povm_feasibility(a, unsharp_z_povm(1.0)), Error);
}

TEST_CASE("sharpness boundary for orthogonal axes is 1/sqrt2") {
    const BoundaryEstimate b = sharpness_boundary({0, 0, 1}, {1, 0, 0});
    CHECK(std::abs(b.eta - 1.0 / std::sqrt(2.0)) < 0.01);
    CHECK(b.lo <= b.hi);
    CHECK(b.hi - b.lo <= 0.005 + 1e-12);
    const BoundaryEstimate par = sharpness_boundary({0, 0, 1}, {0, 0, 1});
    CHECK(par.eta == 1.0);
}

TEST_CASE("trivial partner instrument admits an explicit joint") {
    const Instrument z = luders_instrument(unsharp_z_povm(1.0));
    const Instrument id = Instrument::identity(2);
    const CompatReport r = joint_instrument_feasibility(z, id);
    REQUIRE(r.verdict == Verdict::compatible);
    REQUIRE(r.joint_instrument.has_value());
    const Instrument joint = r.joint_instrument->to_instrument();
    CHECK(joint.size() == 2);
    CHECK(joint[0].label == "+|id");
    // Summing over the partner recovers the z instrument as a channel.
    const DensityOperator rho = DensityOperator::maximally_mixed(2);
    const auto pz = instrument_probabilities(z, rho);
    const auto pj = instrument_probabilities(joint, rho);
    CHECK(pj[0] == doctest::Approx(pz[0]).epsilon(1e-6));
    for (std::size_t f = 0; f < 2; ++f) {
        const ChoiMatrix expected = choi_of_branch(z[f].ops);
        CHECK(max_abs_diff(r.joint_instrument->at(f, 0).matrix(), expected.matrix()) < 1e-6);
    }
}

TEST_CASE("sharp z and x Lueders instruments have no joint instrument") {
    const Instrument z = luders_instrument(unsharp_z_povm(1.0));
    const Instrument x = luders_instrument(unsharp_qubit_povm(1.0, 1, 0, 0));
    CHECK(joint_instrument_feasibility(z, x).verdict == Verdict::incompatible);
    JointInstrumentOptions strict;
    strict.second_marginal = MarginalLevel::channel;
    CHECK(joint_instrument_feasibility(z, x, strict).verdict == Verdict::incompatible);
}

TEST_CASE("strict mode needs equal total channels") {
    const Instrument z = luders_instrument(unsharp_z_povm(1.0));
    const Instrument z_weak = luders_instrument(unsharp_z_povm(0.5));
    JointInstrumentOptions strict;
    strict.second_marginal = MarginalLevel::channel;
    // Lueders z dephases fully; the weak version only partially.
    CHECK(joint_instrument_feasibility(z, z_weak, strict).verdict == Verdict::incompatible);
    // At statistics level the weak z is a coarse-graining of the sharp one.
    CHECK(joint_instrument_feasibility(z, z_weak).verdict == Verdict::compatible);
}
