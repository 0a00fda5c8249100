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


#ifndef PARITYSIM_VERIFICATION_H
#define PARITYSIM_VERIFICATION_H

#include <cstdint>
#include <string>
#include <vector>

#include "paritysim/state_vector.h"

namespace paritysim {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    /// Largest deviation seen (phase-aligned amplitude distance, probability
    /// error, or cost difference depending on the check).
    double worst = 0;
    /// Number of branches or cases examined.
    int64_t cases = 0;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckResult> checks;

    bool all_passed() const;
    int failures() const;
    void append(const CheckReport &other);
};

/// max_k |s2_k - e^{i phi} s1_k| with phi chosen from the overlap <s1|s2>.
/// Returns +infinity on a qubit-count mismatch.
double phase_aligned_distance(const StateVector &s1, const StateVector &s2);

/// Completeness of both fusion gates and the detector-pattern table.
CheckReport verify_povm();

/// Every symbolic transition against the dense simulation, all Kraus
/// branches and all intermediate measurement strings, logical levels up to
/// max_level and resources up to max_level + 1.
CheckReport verify_transitions(int max_level = 4, double tol = 1e-10);

/// End-to-end gate runs: CNOT truth table at levels 2 with |0>^(3), Z90 on
/// num_random random logical states, and the placement of the Z90 qubit.
CheckReport verify_gates(int num_random = 20, uint64_t seed = 2026, double tol = 1e-10);

/// Minimum-cost recursion against exhaustive fusion-tree enumeration.
CheckReport verify_dp(int max_m = 10);

/// Closed-form probabilities and costs against exact small-case sums.
CheckReport verify_formulas();

}  // namespace paritysim

#endif
