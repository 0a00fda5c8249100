// Copyright 2026 The paritysim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PARITYSIM_FUSION_KERNEL_H
#define PARITYSIM_FUSION_KERNEL_H

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paritysim/rng.h"
#include "paritysim/state_vector.h"

namespace paritysim {

enum class GateType { TypeI, TypeII };
enum class OutcomeClass { Success, Failure };
enum class Pauli { I, X, Z };

std::string gate_name(GateType gate);
char pauli_name(Pauli p);

/// Photon counts, one per detector: 4 detectors for type-II, 2 for type-I.
struct DetectorPattern {
    std::array<uint8_t, 4> counts{};
    uint8_t num_detectors = 0;

    static DetectorPattern parse(std::string_view digits);
    int total() const;
    /// "d_1010" style label.
    std::string str() const;
    bool operator==(const DetectorPattern &other) const = default;
};

/// One measurement operator of a fusion gate.
///
/// `matrix` is row-major, 2^output_qubits rows by 4 columns, with column
/// index bit(first input) + 2 * bit(second input).
///
/// Corrections are labels only; nothing is applied automatically.
///   - Success, Z: type-I applies Z to the output qubit; type-II applies
///     logical Z to the block that held the second input qubit.
///   - Failure, X: `measured_bits` holds the computational-basis values
///     read from the (first, second) inputs; each side that read 1 needs a
///     logical bit flip.
struct KrausElement {
    DetectorPattern pattern;
    std::vector<Complex> matrix;
    size_t output_qubits = 0;
    OutcomeClass outcome_class = OutcomeClass::Success;
    Pauli correction = Pauli::I;
    std::optional<std::array<int, 2>> measured_bits;
};

struct FusionOutcome {
    DetectorPattern pattern;
    OutcomeClass outcome_class = OutcomeClass::Success;
    double probability = 0;
    Pauli correction = Pauli::I;
    std::optional<std::array<int, 2>> measured_bits;
    /// Index into the gate's element list.
    size_t element_index = 0;
};

struct EnumeratedOutcome {
    FusionOutcome outcome;
    /// Empty when the branch has (numerically) zero probability.
    std::optional<StateVector> post_state;
};

/// The 8 elements of the type-II gate: 4 success, 4 failure.
const std::vector<KrausElement> &fII_elements();
/// The 5 elements of the type-I gate: 2 success, 3 failure.
const std::vector<KrausElement> &fI_elements();
const std::vector<KrausElement> &fusion_elements(GateType gate);

/// Sum_k E_k^dagger E_k as a row-major 4x4 matrix.
std::array<Complex, 16> completeness_sum(std::span<const KrausElement> elements);
/// Max elementwise |Sum E^dagger E - I|.
double completeness_deviation(std::span<const KrausElement> elements);

/// Every detector pattern with its exact Born probability and renormalized
/// post-state. Probabilities sum to 1 within 1e-10.
std::vector<EnumeratedOutcome> enumerate_outcomes(
    const StateVector &state, GateType gate, std::pair<size_t, size_t> qubit_pair);

/// Samples one detector pattern with Born probability ||E psi||^2.
/// The Pauli correction is reported but not applied.
std::pair<FusionOutcome, StateVector> apply_fusion(
    const StateVector &state, GateType gate, std::pair<size_t, size_t> qubit_pair, RngStream &rng);

/// Applies one specific element (by index) and renormalizes.
std::pair<FusionOutcome, StateVector> apply_fusion_element(
    const StateVector &state, GateType gate, std::pair<size_t, size_t> qubit_pair, size_t element_index);

}  // namespace paritysim

#endif
