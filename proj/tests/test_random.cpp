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
#include <set>

#include "qmeas/linalg.hpp"
#include "qmeas/random.hpp"

using namespace qmeas;

TEST_CASE("counter generator is a pure function of seed, stream and counter") {
    CounterRng a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        CHECK(x == b());
        CHECK(x != c());
        CHECK(x != d());
    }
    CHECK(a.counter() == 100);
}

TEST_CASE("split streams are reproducible and distinct") {
    const CounterRng parent(9);
    CounterRng s1 = parent.split(1), s1b = parent.split(1), s2 = parent.split(2);
    const auto v = s1();
    CHECK(v == s1b());
    CHECK(v != s2());
}

TEST_CASE("uniform and normal moments") {
    CounterRng rng(123);
    const int n = 200000;
    double su = 0, su2 = 0, sn = 0, sn2 = 0;
    bool in_range = true;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        in_range = in_range && u >= 0.0 && u < 1.0;
        su += u;
        su2 += u * u;
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
    }
    CHECK(in_range);
    // 6-sigma bands on the sample moments.
    CHECK(std::abs(su / n - 0.5) < 6 * std::sqrt(1.0 / 12 / n));
    CHECK(std::abs(su2 / n - 1.0 / 3) < 6 * std::sqrt(4.0 / 45 / n));
    CHECK(std::abs(sn / n) < 6 / std::sqrt(n));
    CHECK(std::abs(sn2 / n - 1.0) < 6 * std::sqrt(2.0 / n));
}

TEST_CASE("Haar unitaries are unitary and random states normalised") {
    CounterRng rng(8);
    for (std::size_t d : {2u, 3u, 4u, 7u}) {
        const ComplexMatrix u = haar_unitary(d, rng);
        CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(d)) < 1e-13);
        const auto psi = random_pure_state(d, rng);
        double nrm = 0;
        for (auto z : psi) nrm += std::norm(z);
        CHECK(nrm == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("Haar first-column weight |u_00|^2 has mean 1/d") {
    CounterRng rng(77);
    const std::size_t d = 3;
    const int n = 20000;
    double s = 0;
    for (int i = 0; i < n; ++i) s += std::norm(haar_unitary(d, rng)(0, 0));
    // Var |u_00|^2 = (d - 1) / (d^2 (d + 1)).
    const double sd = std::sqrt((d - 1.0) / (d * d * (d + 1.0)) / n);
    CHECK(std::abs(s / n - 1.0 / d) < 6 * sd);
}

TEST_CASE("random density matrices, effects and Kraus maps are valid") {
    CounterRng rng(5);
    for (int t = 0; t < 20; ++t) {
        const auto rho = random_density_matrix(3, rng);
        CHECK(min_eigenvalue(rho) > -1e-14);
        CHECK(std::abs(rho.trace() - cplx(1.0)) < 1e-14);
        const auto e = eigvals_hermitian(random_effect(3, rng));
        CHECK(e.front() > -1e-13);
        CHECK(e.back() < 1 + 1e-13);
        const auto ks = random_kraus(3, 2, 3, rng);
        ComplexMatrix sum(3, 3);
        for (const auto &k : ks) sum += k.adjoint() * k;
        CHECK(max_abs_diff(sum, ComplexMatrix::identity(3)) < 1e-13);
    }
}
