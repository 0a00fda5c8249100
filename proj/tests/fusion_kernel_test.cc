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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "paritysim/errors.h"
#include "paritysim/verification.h"

using namespace paritysim;

namespace {

const double kS = 1 / std::sqrt(2.0);

// Two-qubit state from amplitudes over (first, second) = 00, 10, 01, 11,
// fusing qubits (0, 1).
StateVector two(Complex a00, Complex a10, Complex a01, Complex a11) {
    return StateVector(std::vector<Complex>{a00, a10, a01, a11});
}

double probability_of(const std::vector<EnumeratedOutcome> &outs, const std::string &pattern) {
    for (const auto &o : outs) {
        if (o.outcome.pattern.str() == pattern) {
            return o.outcome.probability;
        }
    }
    return -1;
}

StateVector random_state(size_t qubits, RngStream &rng) {
    std::vector<Complex> v(size_t{1} << qubits);
    for (auto &a : v) {
        a = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
    return StateVector(v).normalized();
}

}  // namespace

TEST(fusion_elements, counts_and_classes) {
    const auto &f2 = fII_elements();
    const auto &f1 = fI_elements();
    ASSERT_EQ(f2.size(), 8u);
    ASSERT_EQ(f1.size(), 5u);
    std::set<std::string> success2;
    std::set<std::string> failure2;
    for (const auto &e : f2) {
        (e.outcome_class == OutcomeClass::Success ? success2 : failure2).insert(e.pattern.str());
        EXPECT_EQ(e.output_qubits, 0u);
    }
    EXPECT_EQ(success2, (std::set<std::string>{"d_1010", "d_0101", "d_1001", "d_0110"}));
    EXPECT_EQ(failure2, (std::set<std::string>{"d_2000", "d_0200", "d_0020", "d_0002"}));
    EXPECT_EQ(f1[0].pattern.str(), "d_10");
    EXPECT_EQ(f1[1].pattern.str(), "d_01");
    EXPECT_EQ(f1[1].correction, Pauli::Z);
    EXPECT_EQ(f1[0].output_qubits, 1u);
}

TEST(fusion_elements, pattern_totals) {
    for (const auto &e : fII_elements()) {
        EXPECT_EQ(e.pattern.total(), 2) << e.pattern.str();
    }
    for (const auto &e : fI_elements()) {
        int t = e.pattern.total();
        if (e.outcome_class == OutcomeClass::Success) {
            EXPECT_EQ(t, 1);
        } else {
            EXPECT_TRUE(t == 0 || t == 2) << e.pattern.str();
        }
    }
}

TEST(fusion_elements, minus_sign_successes_carry_z) {
    for (const auto &e : fII_elements()) {
        if (e.outcome_class != OutcomeClass::Success) {
            EXPECT_EQ(e.correction, Pauli::X);
            EXPECT_TRUE(e.measured_bits.has_value());
            continue;
        }
        bool minus = std::real(e.matrix[3]) < 0;
        EXPECT_EQ(e.correction, minus ? Pauli::Z : Pauli::I) << e.pattern.str();
    }
}

TEST(fusion_elements, completeness) {
    EXPECT_LT(completeness_deviation(fII_elements()), 1e-12);
    EXPECT_LT(completeness_deviation(fI_elements()), 1e-12);
}

TEST(fusion_elements, pattern_parse) {
    EXPECT_EQ(DetectorPattern::parse("d_1010"), DetectorPattern::parse("1010"));
    EXPECT_EQ(DetectorPattern::parse("02").str(), "d_02");
    EXPECT_THROW(DetectorPattern::parse("123"), SimError);
    EXPECT_THROW(DetectorPattern::parse("3000"), SimError);
}

TEST(enumerate_outcomes, fII_on_bell_pair) {
    auto outs = enumerate_outcomes(two(kS, 0, 0, kS), GateType::TypeII, {0, 1});
    EXPECT_NEAR(probability_of(outs, "d_1010"), 0.5, 1e-14);
    EXPECT_NEAR(probability_of(outs, "d_0101"), 0.5, 1e-14);
    for (const char *p : {"d_1001", "d_0110", "d_2000", "d_0200", "d_0020", "d_0002"}) {
        EXPECT_NEAR(probability_of(outs, p), 0, 1e-14) << p;
    }
}

TEST(enumerate_outcomes, fII_on_01) {
    auto outs = enumerate_outcomes(two(0, 0, 1, 0), GateType::TypeII, {0, 1});
    int nonzero = 0;
    for (const auto &o : outs) {
        nonzero += o.outcome.probability > 1e-14;
    }
    EXPECT_EQ(nonzero, 2);
    EXPECT_NEAR(probability_of(outs, "d_2000"), 0.5, 1e-14);
    EXPECT_NEAR(probability_of(outs, "d_0200"), 0.5, 1e-14);
}

TEST(enumerate_outcomes, fII_on_minus_bell_pair) {
    auto outs = enumerate_outcomes(two(kS, 0, 0, -kS), GateType::TypeII, {0, 1});
    EXPECT_NEAR(probability_of(outs, "d_1001"), 0.5, 1e-14);
    EXPECT_NEAR(probability_of(outs, "d_0110"), 0.5, 1e-14);
    EXPECT_NEAR(probability_of(outs, "d_1010"), 0, 1e-14);
}

TEST(enumerate_outcomes, fII_minus_branch_with_z_matches_plus_branch) {
    // Fuse a logical qubit into a Bell pair; the Z-corrected minus branch
    // must equal the plus branch.
    Complex a(0.6, 0);
    Complex b(0, 0.8);
    StateVector st = tensor(build_parity_state(2, a, b), build_parity_state(2, 1, 0));
    auto outs = enumerate_outcomes(st, GateType::TypeII, {1, 3});
    const StateVector *plus = nullptr;
    for (const auto &o : outs) {
        if (o.outcome.pattern.str() == "d_1010") {
            plus = &*o.post_state;
        }
    }
    ASSERT_NE(plus, nullptr);
    for (const auto &o : outs) {
        if (o.outcome.correction == Pauli::Z) {
            StateVector fixed = apply_logical_z(*o.post_state, 1, 1);
            EXPECT_LT(phase_aligned_distance(*plus, fixed), 1e-14);
        }
    }
}

TEST(enumerate_outcomes, fI_on_bell_pair) {
    auto outs = enumerate_outcomes(two(kS, 0, 0, kS), GateType::TypeI, {0, 1});
    ASSERT_TRUE(outs[0].post_state && outs[1].post_state);
    EXPECT_NEAR(outs[0].outcome.probability, 0.5, 1e-14);
    EXPECT_NEAR(outs[1].outcome.probability, 0.5, 1e-14);
    StateVector plus(std::vector<Complex>{kS, kS});
    StateVector minus(std::vector<Complex>{kS, -kS});
    EXPECT_LT(phase_aligned_distance(plus, *outs[0].post_state), 1e-14);
    EXPECT_LT(phase_aligned_distance(minus, *outs[1].post_state), 1e-14);
    EXPECT_LT(phase_aligned_distance(plus, apply_1q(*outs[1].post_state, 0, pauli_z())), 1e-14);
}

TEST(enumerate_outcomes, fI_on_10_destroys_both) {
    auto outs = enumerate_outcomes(two(0, 1, 0, 0), GateType::TypeI, {0, 1});
    EXPECT_NEAR(probability_of(outs, "d_00"), 1.0, 1e-14);
    for (const auto &o : outs) {
        if (o.post_state) {
            EXPECT_EQ(o.post_state->num_qubits(), 0u);
        }
    }
}

TEST(enumerate_outcomes, probabilities_sum_to_one) {
    RngStream rng(5, 0);
    for (int k = 0; k < 40; k++) {
        size_t n = 2 + static_cast<size_t>(k % 4);
        StateVector s = random_state(n, rng);
        size_t i = static_cast<size_t>(k) % n;
        size_t j = (i + 1 + static_cast<size_t>(k / 4) % (n - 1)) % n;
        for (GateType g : {GateType::TypeI, GateType::TypeII}) {
            double total = 0;
            for (const auto &o : enumerate_outcomes(s, g, {i, j})) {
                total += o.outcome.probability;
            }
            EXPECT_NEAR(total, 1.0, 1e-10);
        }
    }
}

TEST(enumerate_outcomes, parity_sectors) {
    RngStream rng(6, 0);
    for (int k = 0; k < 20; k++) {
        Complex x(rng.uniform(), rng.uniform());
        Complex y(rng.uniform(), rng.uniform());
        double n = std::sqrt(std::norm(x) + std::norm(y));
        double even_fail = 0;
        for (const auto &o : enumerate_outcomes(two(x / n, 0, 0, y / n), GateType::TypeII, {0, 1})) {
            even_fail += o.outcome.outcome_class == OutcomeClass::Failure ? o.outcome.probability : 0;
        }
        double odd_success = 0;
        for (const auto &o : enumerate_outcomes(two(0, x / n, y / n, 0), GateType::TypeII, {0, 1})) {
            odd_success += o.outcome.outcome_class == OutcomeClass::Success ? o.outcome.probability : 0;
        }
        EXPECT_NEAR(even_fail, 0, 1e-14);
        EXPECT_NEAR(odd_success, 0, 1e-14);
    }
}

TEST(apply_fusion, bell_pair_fII_always_succeeds) {
    RngStream rng(1, 0);
    for (int k = 0; k < 100; k++) {
        auto [o, post] = apply_fusion(two(kS, 0, 0, kS), GateType::TypeII, {0, 1}, rng);
        EXPECT_EQ(o.outcome_class, OutcomeClass::Success);
        EXPECT_EQ(post.num_qubits(), 0u);
    }
}

TEST(apply_fusion, fI_on_10_fails) {
    RngStream rng(2, 0);
    auto [o, post] = apply_fusion(two(0, 1, 0, 0), GateType::TypeI, {0, 1}, rng);
    EXPECT_EQ(o.pattern.str(), "d_00");
    EXPECT_NEAR(o.probability, 1.0, 1e-14);
}

TEST(apply_fusion, errors) {
    RngStream rng(3, 0);
    StateVector s = two(kS, 0, 0, kS);
    EXPECT_THROW(apply_fusion(s, GateType::TypeII, {0, 0}, rng), SimError);
    try {
        apply_fusion(s, GateType::TypeII, {0, 2}, rng);
        FAIL();
    } catch (const SimError &e) {
        EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
    }
    try {
        apply_fusion(two(1, 1, 0, 0), GateType::TypeII, {0, 1}, rng);
        FAIL();
    } catch (const SimError &e) {
        EXPECT_EQ(e.code(), ErrorCode::UnnormalizedState);
    }
}

TEST(apply_fusion, sampled_frequencies_match_born_rule) {
    RngStream source(9, 0);
    StateVector s = random_state(3, source);
    for (GateType g : {GateType::TypeI, GateType::TypeII}) {
        auto outs = enumerate_outcomes(s, g, {2, 0});
        std::vector<int> counts(outs.size());
        const int n = 40000;
        for (int k = 0; k < n; k++) {
            RngStream rng(77, static_cast<uint64_t>(k));
            counts[apply_fusion(s, g, {2, 0}, rng).first.element_index]++;
        }
        for (size_t i = 0; i < outs.size(); i++) {
            double p = outs[i].outcome.probability;
            double sigma = std::sqrt(p * (1 - p) / n);
            EXPECT_NEAR(counts[i] / static_cast<double>(n), p, 4 * sigma + 1e-12) << gate_name(g) << " " << i;
        }
    }
}

TEST(apply_fusion_element, zero_probability_branch) {
    try {
        apply_fusion_element(two(kS, 0, 0, kS), GateType::TypeII, {0, 1}, 4);
        FAIL();
    } catch (const SimError &e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroProbabilityBranch);
    }
}
