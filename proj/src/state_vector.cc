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

#include "paritysim/state_vector.h"

#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "paritysim/errors.h"

using namespace paritysim;

namespace {

size_t remove_bit(size_t x, size_t k) {
    size_t low = x & ((size_t{1} << k) - 1);
    return low | ((x >> (k + 1)) << k);
}

size_t insert_bit(size_t x, size_t k, size_t bit) {
    size_t low = x & ((size_t{1} << k) - 1);
    return low | (bit << k) | ((x >> k) << (k + 1));
}

void check_qubit(const StateVector &state, size_t qubit) {
    if (qubit >= state.num_qubits()) {
        throw SimError(
            ErrorCode::IndexOutOfRange,
            "qubit " + std::to_string(qubit) + " of a " + std::to_string(state.num_qubits()) + "-qubit state");
    }
}

void check_block(const StateVector &state, size_t start, size_t size) {
    if (size == 0 || start + size > state.num_qubits()) {
        throw SimError(ErrorCode::IndexOutOfRange, "block exceeds the register");
    }
}

}  // namespace

Mat2 paritysim::identity_gate() {
    return {1, 0, 0, 1};
}

Mat2 paritysim::pauli_x() {
    return {0, 1, 1, 0};
}

Mat2 paritysim::pauli_z() {
    return {1, 0, 0, -1};
}

Mat2 paritysim::hadamard() {
    double s = 1 / std::sqrt(2.0);
    return {s, s, s, -s};
}

Mat2 paritysim::z_rotation(double theta) {
    return {1, 0, 0, std::polar(1.0, theta)};
}

Mat2 paritysim::x_rotation(double theta) {
    Complex c = std::cos(theta / 2);
    Complex s = Complex(0, std::sin(theta / 2));
    return {c, s, s, c};
}

Mat2 paritysim::multiply(const Mat2 &a, const Mat2 &b) {
    return {
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    };
}

bool paritysim::is_unitary(const Mat2 &u, double tol) {
    // U^dagger U
    Mat2 d{std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
    Mat2 p = multiply(d, u);
    return std::abs(p[0] - 1.0) < tol && std::abs(p[1]) < tol && std::abs(p[2]) < tol && std::abs(p[3] - 1.0) < tol;
}

StateVector::StateVector(size_t num_qubits) : num_qubits_(num_qubits), amplitudes_(size_t{1} << num_qubits) {
    amplitudes_[0] = 1;
}

StateVector::StateVector(std::vector<Complex> amplitudes) : num_qubits_(0), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty() || !std::has_single_bit(amplitudes_.size())) {
        throw SimError(ErrorCode::DimensionMismatch, "amplitude count must be a power of two");
    }
    num_qubits_ = static_cast<size_t>(std::countr_zero(amplitudes_.size()));
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
    double n = norm_squared();
    if (n < 1e-28) {
        throw SimError(ErrorCode::ZeroProbabilityBranch, "cannot normalize a zero vector");
    }
    return scaled(1.0 / std::sqrt(n));
}

StateVector StateVector::scaled(Complex factor) const {
    std::vector<Complex> out(amplitudes_);
    for (auto &a : out) {
        a *= factor;
    }
    return StateVector(std::move(out));
}

StateVector paritysim::build_parity_state(size_t level, Complex alpha, Complex beta, size_t qubit_budget) {
    if (level < 1) {
        throw SimError(ErrorCode::LevelTooLow, "parity code level must be at least 1");
    }
    if (level > qubit_budget) {
        throw SimError(
            ErrorCode::LevelTooLarge,
            "level " + std::to_string(level) + " exceeds qubit budget " + std::to_string(qubit_budget));
    }
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-10) {
        throw SimError(ErrorCode::UnnormalizedState, "|alpha|^2 + |beta|^2 must be 1");
    }
    Complex amps[2] = {alpha, beta};
    size_t levels[1] = {level};
    return build_encoded_state(levels, amps, qubit_budget);
}

StateVector paritysim::build_encoded_state(
    std::span<const size_t> levels, std::span<const Complex> amps, size_t qubit_budget) {
    size_t total = std::accumulate(levels.begin(), levels.end(), size_t{0});
    if (total > qubit_budget) {
        throw SimError(ErrorCode::LevelTooLarge, std::to_string(total) + " qubits exceeds the budget");
    }
    if (amps.size() != (size_t{1} << levels.size())) {
        throw SimError(ErrorCode::DimensionMismatch, "need 2^blocks logical amplitudes");
    }
    double scale = 1;
    for (size_t level : levels) {
        if (level < 1) {
            throw SimError(ErrorCode::LevelTooLow, "block level must be at least 1");
        }
        scale *= std::pow(2.0, -0.5 * static_cast<double>(level - 1));
    }
    std::vector<Complex> out(size_t{1} << total);
    for (size_t x = 0; x < out.size(); x++) {
        size_t logical = 0;
        size_t offset = 0;
        for (size_t b = 0; b < levels.size(); b++) {
            size_t mask = ((size_t{1} << levels[b]) - 1) << offset;
            logical |= static_cast<size_t>(std::popcount(x & mask) & 1) << b;
            offset += levels[b];
        }
        out[x] = amps[logical] * scale;
    }
    return StateVector(std::move(out));
}

StateVector paritysim::tensor(const StateVector &low, const StateVector &high) {
    std::vector<Complex> out(low.dimension() * high.dimension());
    for (size_t h = 0; h < high.dimension(); h++) {
        for (size_t l = 0; l < low.dimension(); l++) {
            out[(h << low.num_qubits()) | l] = high.amplitude(h) * low.amplitude(l);
        }
    }
    return StateVector(std::move(out));
}

StateVector paritysim::apply_1q(const StateVector &state, size_t qubit, const Mat2 &u) {
    check_qubit(state, qubit);
    if (!is_unitary(u)) {
        throw SimError(ErrorCode::NonUnitary, "single-qubit operator is not unitary");
    }
    std::vector<Complex> out(state.amplitudes().begin(), state.amplitudes().end());
    size_t bit = size_t{1} << qubit;
    for (size_t x = 0; x < out.size(); x++) {
        if (x & bit) {
            continue;
        }
        Complex a0 = out[x];
        Complex a1 = out[x | bit];
        out[x] = u[0] * a0 + u[1] * a1;
        out[x | bit] = u[2] * a0 + u[3] * a1;
    }
    return StateVector(std::move(out));
}

std::pair<double, StateVector> paritysim::measure_qubit(const StateVector &state, size_t qubit, int outcome) {
    check_qubit(state, qubit);
    if (outcome != 0 && outcome != 1) {
        throw SimError(ErrorCode::InvalidArgument, "measurement outcome must be 0 or 1");
    }
    std::vector<Complex> out(state.dimension() / 2);
    double p = 0;
    for (size_t r = 0; r < out.size(); r++) {
        Complex a = state.amplitude(insert_bit(r, qubit, static_cast<size_t>(outcome)));
        out[r] = a;
        p += std::norm(a);
    }
    if (p < 1e-14) {
        throw SimError(ErrorCode::ZeroProbabilityBranch, "requested outcome has probability " + std::to_string(p));
    }
    return {p, StateVector(std::move(out)).scaled(1 / std::sqrt(p))};
}

StateVector paritysim::apply_pair_operator(
    const StateVector &state, size_t first, size_t second, std::span<const Complex> matrix, size_t output_qubits) {
    check_qubit(state, first);
    check_qubit(state, second);
    if (first == second) {
        throw SimError(ErrorCode::IndexOutOfRange, "fused qubits must be distinct");
    }
    if (output_qubits > 1 || matrix.size() != (size_t{4} << output_qubits)) {
        throw SimError(ErrorCode::DimensionMismatch, "pair operator must be (1 or 2) x 4");
    }
    size_t lo = std::min(first, second);
    size_t hi = std::max(first, second);
    size_t rest_qubits = state.num_qubits() - 2;
    std::vector<Complex> out(size_t{1} << (rest_qubits + output_qubits));
    size_t rows = size_t{1} << output_qubits;
    for (size_t x = 0; x < state.dimension(); x++) {
        Complex a = state.amplitude(x);
        if (a == Complex(0)) {
            continue;
        }
        size_t col = ((x >> first) & 1) | (((x >> second) & 1) << 1);
        size_t rest = remove_bit(remove_bit(x, hi), lo);
        for (size_t row = 0; row < rows; row++) {
            Complex m = matrix[row * 4 + col];
            if (m == Complex(0)) {
                continue;
            }
            size_t target = output_qubits ? insert_bit(rest, lo, row) : rest;
            out[target] += m * a;
        }
    }
    return StateVector(std::move(out));
}

bool paritysim::equivalent_up_to_phase(const StateVector &s1, const StateVector &s2, double tol) {
    if (s1.num_qubits() != s2.num_qubits()) {
        throw SimError(ErrorCode::DimensionMismatch, "states have different qubit counts");
    }
    size_t best = 0;
    for (size_t k = 1; k < s1.dimension(); k++) {
        if (std::abs(s1.amplitude(k)) > std::abs(s1.amplitude(best))) {
            best = k;
        }
    }
    Complex phase = 1;
    if (std::abs(s1.amplitude(best)) > tol && std::abs(s2.amplitude(best)) > tol) {
        phase = s2.amplitude(best) / s1.amplitude(best);
        phase /= std::abs(phase);
    }
    for (size_t k = 0; k < s1.dimension(); k++) {
        if (std::abs(s2.amplitude(k) - phase * s1.amplitude(k)) > tol) {
            return false;
        }
    }
    return true;
}

StateVector paritysim::apply_logical_x(const StateVector &state, size_t block_start, size_t block_size) {
    check_block(state, block_start, block_size);
    return apply_1q(state, block_start, pauli_x());
}

StateVector paritysim::apply_logical_z(const StateVector &state, size_t block_start, size_t block_size) {
    check_block(state, block_start, block_size);
    size_t mask = ((size_t{1} << block_size) - 1) << block_start;
    std::vector<Complex> out(state.amplitudes().begin(), state.amplitudes().end());
    for (size_t x = 0; x < out.size(); x++) {
        if (std::popcount(x & mask) & 1) {
            out[x] = -out[x];
        }
    }
    return StateVector(std::move(out));
}
