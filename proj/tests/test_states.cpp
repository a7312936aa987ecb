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

#include "qmeas/errors.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/random.hpp"
#include "qmeas/states.hpp"

using namespace qmeas;

namespace {

ErrorKind kind_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::validation;
}

} // namespace

TEST_CASE("density operator validation") {
    CHECK_NOTHROW(DensityOperator(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}));
    CHECK(kind_of([] { DensityOperator(ComplexMatrix{{0.6, 0}, {0, 0.6}}); }) == ErrorKind::validation);
    CHECK(kind_of([] { DensityOperator(ComplexMatrix{{1.5, 0}, {0, -0.5}}); }) == ErrorKind::positivity);
    CHECK(kind_of([] { DensityOperator(ComplexMatrix{{0.5, 1}, {0, 0.5}}); }) == ErrorKind::validation);
    CHECK(kind_of([] { DensityOperator(ComplexMatrix(2, 3)); }) == ErrorKind::dimension);
    CHECK(kind_of([] { DensityOperator::basis_state(2, 2); }) == ErrorKind::dimension);
    CHECK(kind_of([] { DensityOperator(ComplexMatrix::identity(65) * cplx(1.0 / 65)); }) == ErrorKind::dimension);
}

TEST_CASE("pure and maximally mixed states") {
    const double h = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> plus{h, h};
    const auto rho = DensityOperator::pure(plus);
    CHECK(max_abs_diff(rho.matrix() * rho.matrix(), rho.matrix()) < 1e-15);
    const auto mm = DensityOperator::maximally_mixed(3);
    CHECK(std::abs(mm.matrix().trace() - cplx(1.0)) < 1e-15);
    CHECK_THROWS_AS(DensityOperator::pure(std::vector<cplx>{1.0, 1.0}), Error);
}

TEST_CASE("effects must lie between 0 and I") {
    CHECK_NOTHROW(Effect(ComplexMatrix::identity(2)));
    CHECK_NOTHROW(Effect(ComplexMatrix(2, 2)));
    CHECK_THROWS_AS(Effect(cplx(1.01) * ComplexMatrix::identity(2)), Error);
    CHECK_THROWS_AS(Effect(cplx(-0.01) * ComplexMatrix::identity(2)), Error);
}

TEST_CASE("POVM completeness and labels") {
    const Povm z = unsharp_z_povm(1.0);
    CHECK(z.labels()[0] == "+");
    CHECK(z.index_of("-") == 1);
    CHECK_THROWS_AS((void)z.index_of("x"), Error);
    CHECK_THROWS_AS(Povm({Effect(ComplexMatrix::unit(2, 0, 0))}), Error);
    CHECK_THROWS_AS(Povm({Effect(ComplexMatrix::unit(2, 0, 0)), Effect(ComplexMatrix::unit(2, 1, 1))},
                         {"a", "a"}),
                    Error);
    const Povm idx({Effect(ComplexMatrix::unit(2, 0, 0)), Effect(ComplexMatrix::unit(2, 1, 1))});
    CHECK(idx.labels()[1] == "1");
}

TEST_CASE("unsharp qubit POVM has spectrum (1 +- eta)/2") {
    for (double eta : {0.0, 0.3, 0.6, 1.0}) {
        const Povm p = unsharp_qubit_povm(eta, 0.6, 0.0, 0.8);
        const auto ev = eigvals_hermitian(p[0].matrix());
        CHECK(ev[0] == doctest::Approx((1 - eta) / 2).epsilon(1e-14));
        CHECK(ev[1] == doctest::Approx((1 + eta) / 2).epsilon(1e-14));
    }
    CHECK_THROWS_AS(unsharp_qubit_povm(1.2, 0, 0, 1), Error);
    CHECK_THROWS_AS(unsharp_qubit_povm(0.5, 0, 0, 2), Error);
}

TEST_CASE("unitary validation and computational-basis POVM") {
    CHECK_THROWS_AS(UnitaryOperator(ComplexMatrix{{1, 1}, {0, 1}}), Error);
    CounterRng rng(2);
    const UnitaryOperator u(haar_unitary(3, rng));
    const Povm p = basis_povm(u);
    CHECK(p.size() == 3);
    const auto c = cnot().matrix();
    CHECK(c(3, 2) == cplx(1.0));
    CHECK(c(2, 3) == cplx(1.0));
}
