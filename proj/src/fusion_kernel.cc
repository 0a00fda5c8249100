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

#include "paritysim/fusion_kernel.h"

#include <cmath>

#include "paritysim/errors.h"

using namespace paritysim;

namespace {

// Column order: |00>, |10>, |01>, |11> written as (first, second) bits,
// i.e. col = first + 2 * second.
constexpr size_t k00 = 0;
constexpr size_t k10 = 1;  // first = 1, second = 0
constexpr size_t k01 = 2;  // first = 0, second = 1
constexpr size_t k11 = 3;

KrausElement make_element(
    std::string_view digits,
    OutcomeClass cls,
    Pauli correction,
    size_t output_qubits,
    std::vector<Complex> matrix,
    std::optional<std::array<int, 2>> measured = std::nullopt) {
    KrausElement e;
    e.pattern = DetectorPattern::parse(digits);
    e.matrix = std::move(matrix);
    e.output_qubits = output_qubits;
    e.outcome_class = cls;
    e.correction = correction;
    e.measured_bits = measured;
    return e;
}

std::vector<Complex> bra(size_t col, Complex scale) {
    std::vector<Complex> m(4);
    m[col] = scale;
    return m;
}

std::vector<Complex> parity_bra(Complex sign, Complex scale) {
    std::vector<Complex> m(4);
    m[k00] = scale;
    m[k11] = sign * scale;
    return m;
}

std::vector<KrausElement> make_fII() {
    const double half = 0.5;
    const double r = 1 / std::sqrt(2.0);
    std::vector<KrausElement> v;
    v.push_back(make_element("1010", OutcomeClass::Success, Pauli::I, 0, parity_bra(+1, half)));
    v.push_back(make_element("0101", OutcomeClass::Success, Pauli::I, 0, parity_bra(+1, half)));
    v.push_back(make_element("1001", OutcomeClass::Success, Pauli::Z, 0, parity_bra(-1, half)));
    v.push_back(make_element("0110", OutcomeClass::Success, Pauli::Z, 0, parity_bra(-1, half)));
    // <01|: first input read 0, second read 1.
    v.push_back(make_element("2000", OutcomeClass::Failure, Pauli::X, 0, bra(k01, r), std::array<int, 2>{0, 1}));
    v.push_back(make_element("0200", OutcomeClass::Failure, Pauli::X, 0, bra(k01, r), std::array<int, 2>{0, 1}));
    v.push_back(make_element("0020", OutcomeClass::Failure, Pauli::X, 0, bra(k10, r), std::array<int, 2>{1, 0}));
    v.push_back(make_element("0002", OutcomeClass::Failure, Pauli::X, 0, bra(k10, r), std::array<int, 2>{1, 0}));
    return v;
}

std::vector<KrausElement> make_fI() {
    const double r = 1 / std::sqrt(2.0);
    std::vector<KrausElement> v;
    // Rows: output |0>, output |1>.
    std::vector<Complex> plus(8), minus(8);
    plus[0 * 4 + k00] = r;
    plus[1 * 4 + k11] = r;
    minus[0 * 4 + k00] = r;
    minus[1 * 4 + k11] = -r;
    v.push_back(make_element("10", OutcomeClass::Success, Pauli::I, 1, plus));
    v.push_back(make_element("01", OutcomeClass::Success, Pauli::Z, 1, minus));
    v.push_back(make_element("20", OutcomeClass::Failure, Pauli::X, 0, bra(k01, r), std::array<int, 2>{0, 1}));
    v.push_back(make_element("02", OutcomeClass::Failure, Pauli::X, 0, bra(k01, r), std::array<int, 2>{0, 1}));
    v.push_back(make_element("00", OutcomeClass::Failure, Pauli::X, 0, bra(k10, 1.0), std::array<int, 2>{1, 0}));
    return v;
}

void check_pair(const StateVector &state, std::pair<size_t, size_t> q) {
    if (q.first == q.second || q.first >= state.num_qubits() || q.second >= state.num_qubits()) {
        throw SimError(
            ErrorCode::IndexOutOfRange,
            "fusion pair (" + std::to_string(q.first) + ", " + std::to_string(q.second) + ") on " +
                std::to_string(state.num_qubits()) + " qubits");
    }
    if (!state.is_normalized(1e-10)) {
        throw SimError(ErrorCode::UnnormalizedState, "fusion input must be normalized");
    }
}

FusionOutcome outcome_of(const KrausElement &e, size_t index, double p) {
    FusionOutcome o;
    o.pattern = e.pattern;
    o.outcome_class = e.outcome_class;
    o.probability = p;
    o.correction = e.correction;
    o.measured_bits = e.measured_bits;
    o.element_index = index;
    return o;
}

}  // namespace

std::string paritysim::gate_name(GateType gate) {
    return gate == GateType::TypeI ? "fI" : "fII";
}

char paritysim::pauli_name(Pauli p) {
    switch (p) {
        case Pauli::I:
            return 'I';
        case Pauli::X:
            return 'X';
        case Pauli::Z:
            return 'Z';
    }
    return '?';
}

DetectorPattern DetectorPattern::parse(std::string_view digits) {
    if (digits.starts_with("d_")) {
        digits.remove_prefix(2);
    }
    if (digits.size() != 2 && digits.size() != 4) {
        throw SimError(ErrorCode::InvalidArgument, "detector pattern needs 2 or 4 digits");
    }
    DetectorPattern p;
    p.num_detectors = static_cast<uint8_t>(digits.size());
    for (size_t k = 0; k < digits.size(); k++) {
        if (digits[k] < '0' || digits[k] > '2') {
            throw SimError(ErrorCode::InvalidArgument, "detector counts must be 0, 1 or 2");
        }
        p.counts[k] = static_cast<uint8_t>(digits[k] - '0');
    }
    return p;
}

int DetectorPattern::total() const {
    int t = 0;
    for (size_t k = 0; k < num_detectors; k++) {
        t += counts[k];
    }
    return t;
}

std::string DetectorPattern::str() const {
    std::string s = "d_";
    for (size_t k = 0; k < num_detectors; k++) {
        s += static_cast<char>('0' + counts[k]);
    }
    return s;
}

const std::vector<KrausElement> &paritysim::fII_elements() {
    static const std::vector<KrausElement> elements = make_fII();
    return elements;
}

const std::vector<KrausElement> &paritysim::fI_elements() {
    static const std::vector<KrausElement> elements = make_fI();
    return elements;
}

const std::vector<KrausElement> &paritysim::fusion_elements(GateType gate) {
    return gate == GateType::TypeI ? fI_elements() : fII_elements();
}

std::array<Complex, 16> paritysim::completeness_sum(std::span<const KrausElement> elements) {
    std::array<Complex, 16> sum{};
    for (const auto &e : elements) {
        size_t rows = size_t{1} << e.output_qubits;
        for (size_t i = 0; i < 4; i++) {
            for (size_t j = 0; j < 4; j++) {
                for (size_t r = 0; r < rows; r++) {
                    sum[i * 4 + j] += std::conj(e.matrix[r * 4 + i]) * e.matrix[r * 4 + j];
                }
            }
        }
    }
    return sum;
}

double paritysim::completeness_deviation(std::span<const KrausElement> elements) {
    auto sum = completeness_sum(elements);
    double worst = 0;
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            Complex expected = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(sum[i * 4 + j] - expected));
        }
    }
    return worst;
}

std::vector<EnumeratedOutcome> paritysim::enumerate_outcomes(
    const StateVector &state, GateType gate, std::pair<size_t, size_t> qubit_pair) {
    check_pair(state, qubit_pair);
    const auto &elements = fusion_elements(gate);
    std::vector<EnumeratedOutcome> result;
    result.reserve(elements.size());
    for (size_t k = 0; k < elements.size(); k++) {
        const auto &e = elements[k];
        StateVector raw = apply_pair_operator(state, qubit_pair.first, qubit_pair.second, e.matrix, e.output_qubits);
        double p = raw.norm_squared();
        EnumeratedOutcome entry{outcome_of(e, k, p), std::nullopt};
        if (p > 1e-14) {
            entry.post_state = raw.scaled(1 / std::sqrt(p));
        }
        result.push_back(std::move(entry));
    }
    return result;
}

std::pair<FusionOutcome, StateVector> paritysim::apply_fusion(
    const StateVector &state, GateType gate, std::pair<size_t, size_t> qubit_pair, RngStream &rng) {
    auto outcomes = enumerate_outcomes(state, gate, qubit_pair);
    double u = rng.uniform();
    double acc = 0;
    size_t chosen = outcomes.size();
    for (size_t k = 0; k < outcomes.size(); k++) {
        if (!outcomes[k].post_state) {
            continue;
        }
        chosen = k;
        acc += outcomes[k].outcome.probability;
        if (u < acc) {
            break;
        }
    }
    // chosen is the last nonzero branch when rounding leaves u >= acc.
    return {outcomes[chosen].outcome, std::move(*outcomes[chosen].post_state)};
}

std::pair<FusionOutcome, StateVector> paritysim::apply_fusion_element(
    const StateVector &state, GateType gate, std::pair<size_t, size_t> qubit_pair, size_t element_index) {
    check_pair(state, qubit_pair);
    const auto &elements = fusion_elements(gate);
    if (element_index >= elements.size()) {
        throw SimError(ErrorCode::IndexOutOfRange, "no such Kraus element");
    }
    const auto &e = elements[element_index];
    StateVector raw = apply_pair_operator(state, qubit_pair.first, qubit_pair.second, e.matrix, e.output_qubits);
    double p = raw.norm_squared();
    if (p < 1e-14) {
        throw SimError(ErrorCode::ZeroProbabilityBranch, e.pattern.str() + " cannot occur for this input");
    }
    return {outcome_of(e, element_index, p), raw.scaled(1 / std::sqrt(p))};
}
