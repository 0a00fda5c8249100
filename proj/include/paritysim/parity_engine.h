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

#ifndef PARITYSIM_PARITY_ENGINE_H
#define PARITYSIM_PARITY_ENGINE_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paritysim/rng.h"
#include "paritysim/state_vector.h"

namespace paritysim {

/// alpha|0>^(level) + beta|1>^(level).
struct LogicalParityQubit {
    Complex alpha = 1;
    Complex beta = 0;
    int level = 1;

    void validate() const;
};

/// Two logical qubits. amps[a + 2 * b] is the amplitude of logical |a>|b>.
struct LogicalPair {
    std::array<Complex, 4> amps{1, 0, 0, 0};
    int level_a = 1;
    int level_b = 1;

    void validate() const;
};

/// |0>^(size); size 2 is a Bell pair.
struct ResourceState {
    int size = 2;
};

enum class ProtocolStatus { Success, LogicalLoss };

enum class TraceKind { Fusion, Measurement, PhysicalGate, ResourceAcquired, ResourceReturned, Loss };

struct TraceEvent {
    TraceKind kind;
    std::string detail;
    bool success = false;
    int resource_size = 0;
    int64_t bell_cost = 0;
};

struct ProtocolTrace {
    std::vector<TraceEvent> events;
    ProtocolStatus status = ProtocolStatus::Success;

    void add(TraceKind kind, std::string detail, bool success = false, int resource_size = 0, int64_t bell_cost = 0);
    /// Bell states charged by ResourceAcquired events.
    int64_t bell_states_consumed() const;
    int fusions_attempted() const;
};

/// Where protocols get their |0>^(k) states from and where remnants go.
class ResourceProvider {
   public:
    struct Acquired {
        ResourceState state;
        int64_t bell_cost = 0;
    };
    virtual ~ResourceProvider() = default;
    /// A resource whose size lies in [min_size, size].
    virtual Acquired acquire(int size, int min_size, RngStream &rng) = 0;
    /// Hands back a leftover resource (size >= 2).
    virtual void recycle(ResourceState remnant) = 0;
};

/// Free, unlimited supply of exactly the requested size. Remnants are dropped.
class UnlimitedSupply final : public ResourceProvider {
   public:
    Acquired acquire(int size, int, RngStream &) override {
        return {ResourceState{size}, 0};
    }
    void recycle(ResourceState) override {
    }
};

// ---- deterministic logical gates ----

LogicalParityQubit logical_z(const LogicalParityQubit &q);
LogicalParityQubit logical_xtheta(const LogicalParityQubit &q, double theta);
/// diag(1, i) on the logical amplitudes.
LogicalParityQubit logical_z90(const LogicalParityQubit &q);

// ---- measurement ----

/// Computational-basis measurement of one physical qubit followed by the
/// X correction when the outcome is 1. Throws LevelTooLow at level 1.
LogicalParityQubit measure_physical(const LogicalParityQubit &q, int outcome);

/// Outcome distribution {P(0), P(1)} when a level-1 qubit is measured.
/// Throws InvalidArgument above level 1.
std::array<double, 2> destroy_by_measurement(const LogicalParityQubit &q);

// ---- encoding and resource joining ----

struct EncodeResult {
    bool fusion_succeeded = false;
    /// Empty after a failure at level 1 (the logical qubit is lost).
    std::optional<LogicalParityQubit> qubit;
    /// The reduced resource left by a failure, when it still has >= 2 qubits.
    std::optional<ResourceState> remnant;

    bool lost() const {
        return !qubit.has_value();
    }
};

/// Type-II fusion between a physical qubit of q and one of r.
/// Success: level q.level + r.size - 2. Failure: level q.level - 1 and
/// remnant r.size - 1.
EncodeResult encode_step(const LogicalParityQubit &q, ResourceState r, bool fusion_succeeds);
EncodeResult encode_step(const LogicalParityQubit &q, ResourceState r, RngStream &rng);

/// H fI (H x H) join. Success gives a.size + b.size - 1; failure destroys both.
std::optional<ResourceState> join_fI(ResourceState a, ResourceState b, bool fusion_succeeds);
std::optional<ResourceState> join_fI(ResourceState a, ResourceState b, RngStream &rng);

struct JoinResult {
    std::optional<ResourceState> joined;
    /// Failure remnants (a.size - 1, b.size - 1); size-1 remnants are dropped.
    std::optional<ResourceState> remnant_a;
    std::optional<ResourceState> remnant_b;
};

/// Type-II join. Success gives a.size + b.size - 2.
JoinResult join_fII(ResourceState a, ResourceState b, bool fusion_succeeds);
JoinResult join_fII(ResourceState a, ResourceState b, RngStream &rng);

// ---- non-deterministic gates ----

struct Z90Policy {
    /// Reuse the reduced resource from a failed attempt directly for the
    /// next attempt (and for the next re-encoding step), then re-encode
    /// the shortfall in small steps. When false every attempt uses a fresh
    /// |0>^(n+1) and remnants are handed to the provider.
    bool reuse_remnant = false;
};

struct Z90Result {
    ProtocolStatus status = ProtocolStatus::Success;
    std::optional<LogicalParityQubit> qubit;
    ProtocolTrace trace;
    int attempts = 0;
};

/// One Z90 attempt with re-encoding resource r. Success gives
/// logical_z90(q) at level r.size - 1; failure gives q at level q.level - 1
/// and remnant r.size - 1.
EncodeResult z90_attempt(const LogicalParityQubit &q, ResourceState r, bool fusion_succeeds);

/// Z90 on one physical qubit, then re-encode from that qubit with a type-II
/// fusion. On success the remaining original qubits are measured and an
/// odd parity is fixed with logical X and Z. Each failed fusion costs one
/// level; failure at level 1 loses the logical qubit.
///
/// With the one-shot policy every attempt consumes |0>^(n+1) and the
/// overall success probability is 1 - 2^-n.
Z90Result z90_protocol(const LogicalParityQubit &q, Z90Policy policy, ResourceProvider &provider, RngStream &rng);

/// Which side carries the parity-measured (control) qubit.
enum class CnotOrientation { ControlIsA, ControlIsB };

enum class CnotAttemptOutcome { Success, TypeIFailed, TypeIIFailed, LogicalLoss };

struct CnotResult {
    CnotAttemptOutcome outcome = CnotAttemptOutcome::Success;
    std::optional<LogicalPair> pair;
    std::optional<ResourceState> remnant;
    ProtocolTrace trace;
};

/// One attempt at the fusion CNOT with gate resource |0>^(m+1), m >= 1:
/// type-I between a control qubit and a resource qubit, then type-II between
/// a target qubit and the type-I output. On success the control is carried by
/// the m remaining resource qubits and the target drops one level. A type-I
/// failure costs the control one level; a type-II failure costs both one
/// level. Both failures leave a |0>^(m) remnant (dropped when m = 1).
CnotResult cnot_protocol(
    const LogicalPair &pair,
    ResourceState gate_resource,
    bool type_i_succeeds,
    bool type_ii_succeeds,
    CnotOrientation orientation = CnotOrientation::ControlIsA);
CnotResult cnot_protocol(
    const LogicalPair &pair,
    ResourceState gate_resource,
    RngStream &rng,
    CnotOrientation orientation = CnotOrientation::ControlIsA);

/// Logical CNOT on amplitudes only.
std::array<Complex, 4> cnot_amplitudes(const std::array<Complex, 4> &amps, CnotOrientation orientation);

}  // namespace paritysim

#endif
