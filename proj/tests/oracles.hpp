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

#pragma once

// Reference computations used only by the tests. Each one is derived from
// first principles, independently of the library code it is checked against.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace oracle {

using Vec3 = std::array<double, 3>;

inline double norm(const Vec3 &v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }
inline double dot(const Vec3 &a, const Vec3 &b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 axpy(double s, const Vec3 &a, const Vec3 &b) {
    return {s * a[0] + b[0], s * a[1] + b[1], s * a[2] + b[2]};
}

/// (2/sqrt(pi)) * integral_0^x exp(-t^2) dt by the composite trapezoid rule.
inline double trapezoid_erf(double x, double step = 1e-5) {
    const double sign = x < 0 ? -1.0 : 1.0;
    x = std::abs(x);
    const auto n = static_cast<long>(std::ceil(x / step));
    if (n == 0) return 0.0;
    const double h = x / static_cast<double>(n);
    double s = 0.5 * (1.0 + std::exp(-x * x));
    for (long i = 1; i < n; ++i) {
        const double t = h * static_cast<double>(i);
        s += std::exp(-t * t);
    }
    // Euler-Maclaurin end correction: T - I = h^2/12 [f'(x) - f'(0)], f'(0) = 0.
    const double fprime = -2.0 * x * std::exp(-x * x);
    return sign * 2.0 / std::sqrt(std::numbers::pi) * (h * s - h * h / 12.0 * fprime);
}

enum class Joint { compatible, incompatible, inconclusive };

/**
 * Brute-force joint measurability of A_+- = (I +- a.sigma)/2 and
 * B_+- = (I +- b.sigma)/2. Writing G_++ = (x0 I + x.sigma)/2, the other three
 * cells follow from the marginals and all four are PSD iff
 *   x0 >= |x|,  1 - x0 >= |a - x|,  1 - x0 >= |b - x|,  x0 >= |x - a - b|.
 * The minimum slack is concave and symmetric under reflection through the
 * plane of a and b, so its maximum is attained with x in that plane. A grid
 * of spacing h over (x0, x) in that plane decides the question unless the
 * best slack is within the Lipschitz bound (1 + sqrt2) h / 2 of zero.
 */
inline Joint brute_force_joint(const Vec3 &a, const Vec3 &b, double h = 0.005) {
    // Orthonormal frame (e1, e2) of span{a, b}.
    Vec3 e1 = a;
    double na = norm(e1);
    if (na < 1e-14) e1 = {1, 0, 0}, na = 1.0;
    e1 = {e1[0] / na, e1[1] / na, e1[2] / na};
    Vec3 e2 = axpy(-dot(b, e1), e1, b);
    const double n2 = norm(e2);
    if (n2 < 1e-14) {
        e2 = std::abs(e1[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        e2 = axpy(-dot(e2, e1), e1, e2);
    }
    const double m2 = norm(e2);
    e2 = {e2[0] / m2, e2[1] / m2, e2[2] / m2};
    const double a1 = dot(a, e1), a2 = dot(a, e2), b1 = dot(b, e1), b2 = dot(b, e2);

    auto len = [](double u, double v) { return std::sqrt(u * u + v * v); };
    double best = -1e300;
    const int n = static_cast<int>(std::round(1.0 / h));
    for (int i = 0; i <= n; ++i) {
        const double x0 = i * h;
        for (int j = -n; j <= n; ++j) {
            const double u = j * h;
            for (int k = -n; k <= n; ++k) {
                const double v = k * h;
                const double s = std::min({x0 - len(u, v), 1.0 - x0 - len(a1 - u, a2 - v),
                                           1.0 - x0 - len(b1 - u, b2 - v),
                                           x0 - len(u - a1 - b1, v - a2 - b2)});
                best = std::max(best, s);
            }
        }
    }
    if (best >= 0.0) return Joint::compatible;
    if (best < -(1.0 + std::sqrt(2.0)) * h / 2.0) return Joint::incompatible;
    return Joint::inconclusive;
}

/**
 * Lueders sequence on a qubit: first E^a_s = (I + s eta_a n.sigma)/2, then
 * E^b_t = (I + t eta_b m.sigma)/2, on rho = (I + r.sigma)/2. With
 * sqrt(E^a_s) = c I + d n.sigma the unnormalised post-state is
 * ((1 + s eta_a n.r)/2 * I + v.sigma)/2 where
 *   v = s eta_a n / 2 + sqrt(1 - eta_a^2) r / 2 + (1 - sqrt(1 - eta_a^2)) (n.r) n / 2,
 * so p(s, t) = [ (1 + s eta_a n.r)/2 + t eta_b m.v ] / 2.
 */
inline double luders_pair_probability(int s, int t, double eta_a, const Vec3 &n, double eta_b,
                                      const Vec3 &m, const Vec3 &r) {
    const double w = std::sqrt(1.0 - eta_a * eta_a);
    const double nr = dot(n, r);
    Vec3 v{};
    for (int k = 0; k < 3; ++k) v[k] = 0.5 * s * eta_a * n[k] + 0.5 * w * r[k] + 0.5 * (1.0 - w) * nr * n[k];
    return 0.5 * (0.5 * (1.0 + s * eta_a * nr) + t * eta_b * dot(m, v));
}

} // namespace oracle
