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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "paritysim/errors.h"
#include "paritysim/rng.h"
#include "paritysim/verification.h"

using namespace paritysim;

namespace {

const double kS = 1 / std::sqrt(2.0);

template <typename F>
void expect_error(ErrorCode code, F f) {
    try {
        f();
        FAIL() << "expected " << error_code_name(code);
    } catch (const SimError &e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

}  // namespace

TEST(parity_state, level_one_is_computational_basis) {
    StateVector s = build_parity_state(1, 1, 0);
    ASSERT_EQ(s.num_qubits(), 1u);
    EXPECT_NEAR(std::abs(s.amplitude(0) - 1.0), 0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitude(1)), 0, 1e-15);
}

TEST(parity_state, level_two_zero_is_bell_pair) {
    StateVector s = build_parity_state(2, 1, 0);
    StateVector bell(std::vector<Complex>{kS, 0, 0, kS});
    EXPECT_LT(phase_aligned_distance(bell, s), 1e-15);
}

TEST(parity_state, level_three_one_is_odd_weight_superposition) {
    StateVector s = build_parity_state(3, 0, 1);
    for (size_t x = 0; x < 8; x++) {
        double expected = (std::popcount(x) & 1) ? 0.5 : 0.0;
        EXPECT_NEAR(std::abs(s.amplitude(x) - expected), 0, 1e-15) << x;
    }
}

TEST(parity_state, recursive_identity) {
    // |0>^(n) = (|0>^(n-1)|0> + |1>^(n-1)|1>) / sqrt2 and the odd analogue.
    for (size_t n = 2; n <= 12; n++) {
        StateVector zero = build_parity_state(n, 1, 0);
        StateVector one = build_parity_state(n, 0, 1);
        StateVector z_prev = build_parity_state(n - 1, 1, 0);
        StateVector o_prev = build_parity_state(n - 1, 0, 1);
        for (size_t x = 0; x < zero.dimension(); x++) {
            size_t low = x & ((size_t{1} << (n - 1)) - 1);
            bool top = (x >> (n - 1)) & 1;
            Complex e0 = kS * (top ? o_prev.amplitude(low) : z_prev.amplitude(low));
            Complex e1 = kS * (top ? z_prev.amplitude(low) : o_prev.amplitude(low));
            ASSERT_LT(std::abs(zero.amplitude(x) - e0), 1e-14);
            ASSERT_LT(std::abs(one.amplitude(x) - e1), 1e-14);
        }
    }
}

TEST(parity_state, errors) {
    expect_error(ErrorCode::LevelTooLow, [] { build_parity_state(0, 1, 0); });
    expect_error(ErrorCode::LevelTooLarge, [] { build_parity_state(23, 1, 0); });
    expect_error(ErrorCode::LevelTooLarge, [] { build_parity_state(5, 1, 0, 4); });
    expect_error(ErrorCode::UnnormalizedState, [] { build_parity_state(2, 1, 1); });
}

TEST(parity_state, encoded_pair_layout) {
    size_t levels[2] = {2, 3};
    Complex amps[4] = {0, 0, 1, 0};  // block 0 = 0, block 1 = 1
    StateVector s = build_encoded_state(levels, amps);
    ASSERT_EQ(s.num_qubits(), 5u);
    for (size_t x = 0; x < s.dimension(); x++) {
        bool ok = (std::popcount(x & 3u) % 2 == 0) && (std::popcount(x >> 2) % 2 == 1);
        EXPECT_NEAR(std::abs(s.amplitude(x)), ok ? 1 / std::sqrt(8.0) : 0.0, 1e-15);
    }
}

TEST(apply_1q, z_on_every_qubit_is_logical_z) {
    Complex a(0.6, 0);
    Complex b(0, 0.8);
    StateVector s = build_parity_state(3, a, b);
    for (size_t q = 0; q < 3; q++) {
        s = apply_1q(s, q, pauli_z());
    }
    EXPECT_LT(phase_aligned_distance(build_parity_state(3, a, -b), s), 1e-14);
}

TEST(apply_1q, x_theta_on_one_qubit_is_logical_x_theta) {
    Complex a = std::cos(0.4);
    Complex b = std::polar(std::sin(0.4), 0.7);
    for (double theta : {0.3, std::numbers::pi / 2, 2.0}) {
        Mat2 u = x_rotation(theta);
        Complex a2 = u[0] * a + u[1] * b;
        Complex b2 = u[2] * a + u[3] * b;
        for (size_t q = 0; q < 4; q++) {
            StateVector s = apply_1q(build_parity_state(4, a, b), q, u);
            EXPECT_LT(phase_aligned_distance(build_parity_state(4, a2, b2), s), 1e-14) << theta << " " << q;
        }
    }
}

TEST(apply_1q, identity_and_errors) {
    StateVector s = build_parity_state(3, 0.6, 0.8);
    EXPECT_LT(phase_aligned_distance(s, apply_1q(s, 1, identity_gate())), 1e-15);
    expect_error(ErrorCode::IndexOutOfRange, [&] { apply_1q(s, 3, pauli_x()); });
    expect_error(ErrorCode::NonUnitary, [&] { apply_1q(s, 0, Mat2{1, 1, 0, 1}); });
}

TEST(measure_qubit, parity_state_outcomes) {
    Complex a(0.6, 0);
    Complex b(0, 0.8);
    StateVector s = build_parity_state(3, a, b);
    for (size_t q = 0; q < 3; q++) {
        auto [p0, s0] = measure_qubit(s, q, 0);
        EXPECT_NEAR(p0, 0.5, 1e-14);
        EXPECT_LT(phase_aligned_distance(build_parity_state(2, a, b), s0), 1e-14);
        auto [p1, s1] = measure_qubit(s, q, 1);
        EXPECT_NEAR(p1, 0.5, 1e-14);
        EXPECT_LT(phase_aligned_distance(build_parity_state(2, b, a), s1), 1e-14);
        EXPECT_LT(phase_aligned_distance(build_parity_state(2, a, b), apply_logical_x(s1, 0, 2)), 1e-14);
    }
}

TEST(measure_qubit, zero_probability_branch) {
    StateVector zero(1);
    expect_error(ErrorCode::ZeroProbabilityBranch, [&] { measure_qubit(zero, 0, 1); });
    expect_error(ErrorCode::IndexOutOfRange, [&] { measure_qubit(zero, 1, 0); });
}

TEST(equivalent_up_to_phase, examples) {
    StateVector s = build_parity_state(3, 0.6, Complex(0, 0.8));
    EXPECT_TRUE(equivalent_up_to_phase(s, s.scaled(std::polar(1.0, std::numbers::pi / 4))));
    EXPECT_FALSE(equivalent_up_to_phase(StateVector(std::vector<Complex>{1, 0}), StateVector(std::vector<Complex>{0, 1})));
    EXPECT_FALSE(equivalent_up_to_phase(s, build_parity_state(3, 0.6, Complex(0, -0.8))));
    expect_error(ErrorCode::DimensionMismatch, [&] { equivalent_up_to_phase(s, StateVector(2)); });
}

TEST(equivalent_up_to_phase, random_phases) {
    RngStream rng(11, 0);
    for (int k = 0; k < 50; k++) {
        double t = std::acos(std::sqrt(rng.uniform()));
        StateVector s = build_parity_state(4, std::cos(t), std::polar(std::sin(t), 6.28 * rng.uniform()));
        EXPECT_TRUE(equivalent_up_to_phase(s, s.scaled(std::polar(1.0, 6.28 * rng.uniform()))));
    }
}

TEST(pair_operator, output_qubit_lands_at_lower_index) {
    // |q2 q1 q0> = |1 0 1>; keep q0's value on the output, drop q2.
    std::vector<Complex> amps(8);
    amps[0b101] = 1;
    std::vector<Complex> m(8);
    m[0 * 4 + 0] = 1;  // <00| -> |0>
    m[1 * 4 + 3] = 1;  // <11| -> |1>
    StateVector out = apply_pair_operator(StateVector(amps), 0, 2, m, 1);
    ASSERT_EQ(out.num_qubits(), 2u);
    EXPECT_NEAR(std::abs(out.amplitude(0b01)), 1.0, 1e-15);
}
