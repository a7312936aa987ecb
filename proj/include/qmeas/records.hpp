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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qmeas/channels.hpp"
#include "qmeas/compat.hpp"
#include "qmeas/states.hpp"

namespace qmeas {

/// Stored outcome counts of repeated runs; counts[i] belongs to labels[i].
struct EventLog {
    std::vector<std::string> labels;
    std::vector<std::uint64_t> counts;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] std::uint64_t count(const std::string &label) const;
    [[nodiscard]] double frequency(std::size_t i) const {
        return static_cast<double>(counts[i]) / static_cast<double>(shots);
    }

    /// Sum of two logs over the same labels and seed.
    EventLog &merge(const EventLog &other);
};

/**
 * i.i.d. outcome draws for runs [first_run, first_run + runs): run r takes
 * one uniform from `CounterRng(seed, r)` and inverts the CDF of the
 * instrument's outcome distribution. Probabilities below 1e-15 are never drawn.
 */
EventLog sample_runs(const Instrument &ins, const DensityOperator &rho, std::uint64_t seed,
                     std::uint64_t first_run, std::uint64_t runs);

/// `sample_runs` over [0, shots), split across threads. Reproducible from
/// (seed, shots) whatever the thread count. shots must be >= 1.
EventLog sample(const Instrument &ins, const DensityOperator &rho, std::uint64_t shots,
                std::uint64_t seed);

/// Per-run outcome tuples of a measurement chain.
struct RecordSequence {
    std::vector<std::vector<std::string>> labels;     ///< alphabet of each step
    std::vector<std::vector<std::uint32_t>> outcomes;  ///< [run][step] label index
    std::uint64_t seed = 0;

    /// Empirical joint counts keyed by outcome-index tuples.
    [[nodiscard]] std::map<std::vector<std::uint32_t>, std::uint64_t> joint_counts() const;
};

/// Runs the chain: draw, update with the Lueders/instrument rule, continue.
RecordSequence sample_sequential(std::span<const Instrument> chain, const DensityOperator &rho,
                                 std::uint64_t shots, std::uint64_t seed);

struct BornComparison {
    std::string label;
    std::uint64_t count;
    double frequency;
    double probability;
    double z;          ///< 0 for a degenerate exact match, +-inf for a degenerate miss
    bool degenerate;   ///< probability is 0 or 1 (within 1e-15)
};

/// z_i = (n_i - N p_i) / sqrt(N p_i (1 - p_i)). Requires shots >= 100.
std::vector<BornComparison> compare_to_born(const EventLog &log, const Instrument &ins,
                                            const DensityOperator &rho);

enum class WignerBasis { bell, computational };

/**
 * Friend-memory scenario. Both instruments map the system qubit S to the
 * carrier S (x) M:
 *   friend : couple S to M (M starts in |0>), then read M in {|0>, |1>};
 *   Wigner : couple, then measure S (x) M in the Bell or computational basis.
 * The coupling is a controlled y-rotation of M by theta; theta = pi copies
 * the z value of S into M.
 */
struct WignerFriendScenario {
    DensityOperator system_state;
    UnitaryOperator friend_unitary;
    Instrument friend_instrument;
    Instrument wigner_instrument;
    double theta;
    WignerBasis wigner_basis;

    /// U (rho_S (x) |0><0|) U^dagger
    [[nodiscard]] DensityOperator post_coupling_state() const;
};

/// Controlled-Ry(theta) on S (x) M, S controls.
UnitaryOperator controlled_rotation(double theta);

WignerFriendScenario build_wigner_friend(const DensityOperator &system_state,
                                         WignerBasis wigner_basis = WignerBasis::bell,
                                         double theta = 3.14159265358979323846);

/// joint_instrument_feasibility(wigner, friend): Wigner's instrument is kept
/// at channel level, the friend's record must be reproduced statistically.
CompatReport scenario_verdict(const WignerFriendScenario &sc,
                              const JointInstrumentOptions &opts = {});

} // namespace qmeas
