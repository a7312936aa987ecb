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

#include <cstdint>
#include <string>
#include <vector>

#include "qmeas/states.hpp"

namespace qmeas {

/// Known probe states with distinct names. Must span the Hermitian space.
class ProbeSet {
  public:
    ProbeSet(std::vector<DensityOperator> states, std::vector<std::string> names);

    [[nodiscard]] const std::vector<DensityOperator> &states() const noexcept { return states_; }
    [[nodiscard]] const std::vector<std::string> &names() const noexcept { return names_; }
    [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return states_.front().dim(); }

  private:
    std::vector<DensityOperator> states_;
    std::vector<std::string> names_;
};

/// The six Pauli eigenstates "+x", "-x", "+y", "-y", "+z", "-z".
ProbeSet qubit_probes();

/// counts[k][i]: outcome labels[i] observed on probe k.
struct CountTable {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> counts;
    std::uint64_t shots_per_probe = 0;
    bool exact = false;  ///< counts are shots * Born probability, not draws
};

/// One multinomial draw per probe, via `sample` on the Lueders instrument.
/// Probe k uses seed mix64(seed ^ mix64(k + 1)).
CountTable simulate_counts(const Povm &p, const ProbeSet &probes, std::uint64_t shots,
                           std::uint64_t seed);

/// Noise-free table: counts = shots * Tr(rho_k E_i).
CountTable exact_counts(const Povm &p, const ProbeSet &probes, std::uint64_t shots = 1);

struct PovmFit {
    Povm povm;
    double max_deviation_before_projection;  ///< largest spectrum excursion outside [0, 1]
    int projection_rounds;
};

/**
 * Linear-inversion detector tomography. Each effect is the least-squares
 * Hermitian fit to its frequencies; the completeness residual is spread
 * equally across outcomes; then spectra are clipped to [0, 1] and the
 * residual redistributed, for up to 50 rounds or until it drops below 1e-9.
 * Should the rounds not settle, the fit is mixed with I/n by the smallest
 * weight that makes it a valid POVM.
 */
PovmFit fit_povm(const CountTable &counts, const ProbeSet &probes);

inline Povm reconstruct_povm(const CountTable &counts, const ProbeSet &probes) {
    return fit_povm(counts, probes).povm;
}

/// Tr(sigma_z (E_+ - E_-)) / 2 clamped to [0, 1]. E_+ is the effect labelled
/// "+" (or the first effect when no label is "+").
double eta_from_povm(const Povm &p);

struct TomographyResult {
    Povm povm_hat;
    double eta_hat;
    double eta_stderr;
    std::uint64_t shots_per_probe;
    int bootstrap_samples;
};

/// Point estimate plus bootstrap standard error: every resample redraws each
/// probe's counts multinomially and reruns the full pipeline. Exact tables
/// have stderr 0.
TomographyResult estimate_eta(const CountTable &counts, const ProbeSet &probes,
                              std::uint64_t seed = 0, int bootstrap = 200);

} // namespace qmeas
