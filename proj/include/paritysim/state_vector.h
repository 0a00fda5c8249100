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

#ifndef PARITYSIM_STATE_VECTOR_H
#define PARITYSIM_STATE_VECTOR_H

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace paritysim {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<Complex, 4>;

constexpr size_t kDefaultQubitBudget = 22;

Mat2 identity_gate();
Mat2 pauli_x();
Mat2 pauli_z();
Mat2 hadamard();
/// diag(1, e^{i theta}); theta = pi/2 is the Z90 gate.
Mat2 z_rotation(double theta);
/// cos(theta/2) I + i sin(theta/2) X.
Mat2 x_rotation(double theta);
Mat2 multiply(const Mat2 &a, const Mat2 &b);
bool is_unitary(const Mat2 &u, double tol = 1e-12);

/// Dense amplitude vector over k physical qubits.
///
/// Qubit 0 is the least significant bit of the basis index. Values are
/// immutable from the outside; every operation returns a new state.
class StateVector {
   public:
    /// |0...0> on num_qubits qubits.
    explicit StateVector(size_t num_qubits = 0);
    /// Takes ownership of the amplitudes; the length must be a power of two.
    explicit StateVector(std::vector<Complex> amplitudes);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t dimension() const {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    Complex amplitude(size_t basis_index) const {
        return amplitudes_[basis_index];
    }

    double norm_squared() const;
    bool is_normalized(double tol = 1e-10) const;
    StateVector normalized() const;
    StateVector scaled(Complex factor) const;

   private:
    size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// alpha|0>^(n) + beta|1>^(n) in the parity code.
///
/// |0>^(n) is the uniform superposition of even-weight basis strings and
/// |1>^(n) the uniform superposition of odd-weight strings.
StateVector build_parity_state(size_t level, Complex alpha, Complex beta, size_t qubit_budget = kDefaultQubitBudget);

/// Sum_x amps[x] |x_0>^(levels[0]) |x_1>^(levels[1]) ..., where bit b of x is
/// the logical value of block b and block 0 occupies the lowest qubits.
StateVector build_encoded_state(
    std::span<const size_t> levels, std::span<const Complex> amps, size_t qubit_budget = kDefaultQubitBudget);

/// Product state a (low qubits) with b (high qubits).
StateVector tensor(const StateVector &low, const StateVector &high);

StateVector apply_1q(const StateVector &state, size_t qubit, const Mat2 &u);

/// Projects qubit onto |outcome>, removes it and renormalizes.
/// Returns the branch probability together with the post-state.
std::pair<double, StateVector> measure_qubit(const StateVector &state, size_t qubit, int outcome);

/// Contracts qubits (first, second) with an operator mapping 2 qubits to
/// output_qubits (0 or 1) qubits. `matrix` is row-major with 2^output_qubits
/// rows and 4 columns; column index = bit(first) + 2 * bit(second).
///
/// The two input qubits are removed. When output_qubits is 1 the output
/// qubit is reinserted at index min(first, second). The result is NOT
/// renormalized.
StateVector apply_pair_operator(
    const StateVector &state, size_t first, size_t second, std::span<const Complex> matrix, size_t output_qubits);

/// True iff s2 == e^{i phi} s1 for some real phi (within tol, elementwise).
bool equivalent_up_to_phase(const StateVector &s1, const StateVector &s2, double tol = 1e-10);

/// Physical-level logical operators on a contiguous block of qubits.
/// X on any single qubit flips the logical value; Z on every qubit is logical Z.
StateVector apply_logical_x(const StateVector &state, size_t block_start, size_t block_size);
StateVector apply_logical_z(const StateVector &state, size_t block_start, size_t block_size);

}  // namespace paritysim

#endif
