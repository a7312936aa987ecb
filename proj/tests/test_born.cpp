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

#include "qmeas/born.hpp"
#include "qmeas/errors.hpp"
#include "qmeas/linalg.hpp"

using namespace qmeas;

TEST_CASE("Born probabilities are clamped only within tolerance") {
    const auto rho = DensityOperator::basis_state(2, 0);
    CHECK(born_prob(rho, Effect(ComplexMatrix::unit(2, 0, 0))) == 1.0);
    CHECK(born_prob(rho, Effect(ComplexMatrix::unit(2, 1, 1))) == 0.0);
    CHECK_THROWS_AS(born_prob(rho, Effect(ComplexMatrix::identity(3))), Error);
}

TEST_CASE("Born rule is additive over random orthonormal resolutions") {
    CounterRng rng(2024);
    std::vector<ProjectorResolution> family;
    for (int i = 0; i < 200; ++i) family.push_back(random_resolution(3, rng));
    const DensityOperator rho(random_density_matrix(3, rng));
    CHECK(additivity_check(rho, family) < 1e-12);
}

TEST_CASE("resolution validation") {
    ProjectorResolution not_complete{ComplexMatrix::unit(2, 0, 0)};
    CHECK_THROWS_AS(validate_resolution(not_complete), Error);
    ProjectorResolution overlapping{ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 0, 0)};
    CHECK_THROWS_AS(validate_resolution(overlapping), Error);
    ProjectorResolution not_projector{0.5 * ComplexMatrix::identity(2), 0.5 * ComplexMatrix::identity(2)};
    CHECK_THROWS_AS(validate_resolution(not_projector), Error);
    CHECK_THROWS_AS(validate_resolution({}), Error);
}

TEST_CASE("tetrahedral qubit POVM is informationally complete") {
    const Povm t = ic_effects_qubit();
    CHECK(t.size() == 4);
    CHECK(psd_rank(effect_gram(t.effects())) == 4);
}

TEST_CASE("random qutrit projector family has full rank") {
    const auto e = ic_projectors(3);
    CHECK(e.size() == 9);
    CHECK(psd_rank(effect_gram(e)) == 9);
    // Same seed, same family.
    CHECK(ic_projectors(3)[4].matrix() == e[4].matrix());
}

TEST_CASE("three qutrit bases do not span the Hermitian space") {
    CounterRng rng(1);
    std::vector<Effect> effects;
    for (int b = 0; b < 3; ++b)
        for (const auto &p : random_resolution(3, rng)) effects.emplace_back(p);
    CHECK(psd_rank(effect_gram(effects)) < 9);
}

TEST_CASE("noiseless state reconstruction round trips") {
    CounterRng rng(55);
    const Povm tetra = ic_effects_qubit();
    const auto qutrit = ic_projectors(3);
    for (int t = 0; t < 20; ++t) {
        const DensityOperator rho2(random_density_matrix(2, rng));
        std::vector<FrameSample> s2;
        for (const auto &e : tetra.effects()) s2.emplace_back(e, born_prob(rho2, e));
        const auto r2 = reconstruct_state(s2);
        CHECK(trace_distance(r2.rho_hat.matrix(), rho2.matrix()) < 1e-9);
        CHECK(r2.residual < 1e-12);

        const DensityOperator rho3(ComplexMatrix::projector(random_pure_state(3, rng)));
        std::vector<FrameSample> s3;
        for (const auto &e : qutrit) s3.emplace_back(e, born_prob(rho3, e));
        const auto r3 = reconstruct_state(s3);
        CHECK(trace_distance(r3.rho_hat.matrix(), rho3.matrix()) < 1e-9);
        CHECK(std::isfinite(r3.condition_diagnostic));
    }
}

TEST_CASE("noisy probabilities still give a valid density operator") {
    const Povm tetra = ic_effects_qubit();
    std::vector<FrameSample> s;
    const double p[4] = {0.6, 0.0, 0.0, 0.4};  // outside the Bloch ball
    for (std::size_t i = 0; i < 4; ++i) s.emplace_back(tetra[i], p[i]);
    const auto r = reconstruct_state(s);
    CHECK(min_eigenvalue(r.rho_hat.matrix()) > -1e-12);
    CHECK(std::abs(r.rho_hat.matrix().trace() - cplx(1.0)) < 1e-12);
}

TEST_CASE("incomplete frames raise a rank error") {
    const Povm z = unsharp_z_povm(1.0);
    std::vector<FrameSample> s{FrameSample(z[0], 1.0), FrameSample(z[1], 0.0)};
    try {
        (void)reconstruct_state(s);
        FAIL("expected rank error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::rank);
    }
    CHECK_THROWS_AS(FrameSample(z[0], 1.5), Error);
}
