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

#include "qmeas/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "qmeas/errors.hpp"

namespace qmeas {

namespace {

constexpr double two_over_sqrt_pi = 2.0 / 1.7724538509055160273;  // 2/sqrt(pi)

// erf(x) = 2/sqrt(pi) exp(-x^2) sum_n 2^n x^(2n+1) / (1*3*...*(2n+1)).
// All terms are positive, so there is no cancellation for 0 <= x <= 2.
double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return two_over_sqrt_pi * std::exp(-x2) * sum;
}

// erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// modified Lentz evaluation; used for x > 2.
double erfc_continued_fraction(double x) {
    constexpr double tiny = 1e-300;
    double f = x;
    double c = f;
    double d = 0.0;
    for (int n = 1; n < 5000; ++n) {
        const double a = 0.5 * n;
        d = x + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x * x) / (std::sqrt(std::numbers::pi) * f);
}

double erf_nonnegative(double x) {
    if (x <= 2.0) return erf_series(x);
    if (x > 27.0) return 1.0;
    return 1.0 - erfc_continued_fraction(x);
}

} // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    const double v = erf_nonnegative(std::abs(x));
    return x < 0.0 ? -v : v;
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return 2.0 - erfc(-x);
    if (x <= 2.0) return 1.0 - erf_series(x);
    if (x > 27.0) return 0.0;
    return erfc_continued_fraction(x);
}

PointerConfig PointerConfig::with_default_grid(double kappa, double delta) {
    const double half = kappa + 8.0 * delta;
    return PointerConfig{kappa, delta, PointerGrid{-half, half, 4097}};
}

std::vector<std::string> PointerConfig::validate() const {
    if (!(std::isfinite(kappa) && kappa >= 0.0)) {
        throw Error(ErrorKind::validation, "kappa must be finite and >= 0");
    }
    if (!(std::isfinite(delta) && delta > 0.0)) {
        throw Error(ErrorKind::validation, "delta must be finite and > 0");
    }
    if (!(grid.q_min < 0.0 && 0.0 < grid.q_max)) {
        throw Error(ErrorKind::validation, "pointer grid must satisfy q_min < 0 < q_max");
    }
    if (grid.n_points < 16) {
        throw Error(ErrorKind::validation, "pointer grid needs at least 16 points");
    }
    std::vector<std::string> warnings;
    const double reach = kappa + 6.0 * delta;
    if (grid.q_min > -reach || grid.q_max < reach) {
        warnings.push_back("grid does not cover +-(kappa + 6 delta) = +-" +
                           std::to_string(reach));
    }
    return warnings;
}

SharpnessResult eta_analytic(double kappa, double delta) {
    if (!(delta > 0.0)) throw Error(ErrorKind::validation, "delta must be > 0");
    if (!(kappa >= 0.0)) throw Error(ErrorKind::validation, "kappa must be >= 0");
    return {qmeas::erf(kappa / (std::numbers::sqrt2 * delta)), SharpnessMethod::analytic, 0.0};
}

namespace {

struct HalfMasses {
    double positive;
    double negative;
};

// Trapezoid masses of |psi(q - shift)|^2 on each side of q = 0. Both sides are
// accumulated from the origin outwards, so mirroring the shift on a grid
// symmetric about 0 reproduces the swapped masses bit for bit.
HalfMasses half_masses(const std::vector<double> &q, double delta, double shift) {
    const double norm = std::pow(2.0 * std::numbers::pi * delta * delta, -0.25);
    const std::size_t n = q.size();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = q[i] - shift;
        const double amp = norm * std::exp(-x * x / (4.0 * delta * delta));
        f[i] = amp * amp;
    }

    // First index with q >= 0.
    const std::size_t right =
        static_cast<std::size_t>(std::lower_bound(q.begin(), q.end(), 0.0) - q.begin());
    double pos = 0.0;
    double neg = 0.0;
    if (right > 0 && q[right] > 0.0) {
        // Bin (q[right-1], q[right]) straddles 0.
        const double a = -q[right - 1];
        const double b = q[right];
        const double f0 = (f[right - 1] * b + f[right] * a) / (a + b);
        neg += 0.5 * a * (f[right - 1] + f0);
        pos += 0.5 * b * (f0 + f[right]);
    }
    for (std::size_t i = right; i + 1 < n; ++i) pos += 0.5 * (q[i + 1] - q[i]) * (f[i] + f[i + 1]);
    // Last index with q <= 0, walking left.
    std::size_t left = right;
    if (right < n && q[right] == 0.0) left = right + 1;
    for (std::size_t i = left; i-- > 1;) neg += 0.5 * (q[i] - q[i - 1]) * (f[i] + f[i - 1]);
    return {pos, neg};
}

} // namespace

InducedPointerPovm induced_effects_numeric(const PointerConfig &cfg) {
    cfg.validate();
    const auto &g = cfg.grid;
    const double span = g.q_max - g.q_min;
    const double h = span / (g.n_points - 1);
    const double reach = cfg.kappa + 6.0 * cfg.delta;
    if (g.q_min > -reach || g.q_max < reach || h > 0.25 * cfg.delta) {
        const double lo = std::min(g.q_min, -(cfg.kappa + 8.0 * cfg.delta));
        const double hi = std::max(g.q_max, cfg.kappa + 8.0 * cfg.delta);
        const long suggested =
            std::max<long>(4097, static_cast<long>(std::ceil((hi - lo) * 64.0 / cfg.delta)) + 1);
        throw Error(ErrorKind::resolution,
                    "pointer grid too coarse or narrow: use q in [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "] with n_points >= " + std::to_string(suggested));
    }

    // q_i = (q_min (n-1-i) + q_max i)/(n-1) is exactly antisymmetric when
    // q_max = -q_min.
    const auto n = static_cast<std::size_t>(g.n_points);
    std::vector<double> q(n);
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        q[i] = (g.q_min * static_cast<double>(n - 1 - i) + g.q_max * static_cast<double>(i)) / denom;
    }

    const double up_shift =
        cfg.shift == ShiftConvention::plus_z_to_plus_q ? cfg.kappa : -cfg.kappa;
    const HalfMasses up = half_masses(q, cfg.delta, up_shift);
    const HalfMasses down = half_masses(q, cfg.delta, -up_shift);
    const double up_total = up.positive + up.negative;
    const double down_total = down.positive + down.negative;

    const std::vector<double> plus{up.positive / up_total, down.positive / down_total};
    const std::vector<double> minus{up.negative / up_total, down.negative / down_total};
    const ComplexMatrix e_plus = ComplexMatrix::diagonal(plus);
    const ComplexMatrix e_minus = ComplexMatrix::diagonal(minus);
    const double residual = max_abs_diff(e_plus + e_minus, ComplexMatrix::identity(2));

    Povm povm({Effect(e_plus), Effect(e_minus)}, {"+", "-"});
    return {std::move(povm), {plus[0] - plus[1], SharpnessMethod::numeric, residual}};
}

SweepTable eta_sweep(const std::vector<double> &kappas, const std::vector<double> &deltas,
                     int n_points) {
    if (kappas.empty() || deltas.empty()) {
        throw Error(ErrorKind::validation, "eta_sweep needs at least one kappa and one delta");
    }
    SweepTable table;
    table.rows.resize(kappas.size() * deltas.size());
    auto fill = [&](std::size_t idx) {
        const double kappa = kappas[idx / deltas.size()];
        const double delta = deltas[idx % deltas.size()];
        auto cfg = PointerConfig::with_default_grid(kappa, delta);
        cfg.grid.n_points = n_points;
        const double analytic = eta_analytic(kappa, delta).eta;
        const double numeric = induced_effects_numeric(cfg).sharpness.eta;
        table.rows[idx] = {kappa, delta, analytic, numeric, std::abs(analytic - numeric)};
    };

    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), table.rows.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < table.rows.size(); ++i) fill(i);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < table.rows.size(); i += workers) fill(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto &t : pool) t.join();
        for (auto &e : errors)
            if (e) std::rethrow_exception(e);
    }
    for (const auto &r : table.rows) table.max_abs_diff = std::max(table.max_abs_diff, r.abs_diff);
    return table;
}

} // namespace qmeas
