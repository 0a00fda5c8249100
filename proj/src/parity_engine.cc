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

#include "paritysim/parity_engine.h"

#include <algorithm>
#include <cmath>

#include "paritysim/errors.h"

using namespace paritysim;

namespace {

void check_resource(ResourceState r) {
    if (r.size < 2) {
        throw SimError(ErrorCode::SizeTooSmall, "resource states have at least 2 qubits");
    }
}

std::optional<ResourceState> remnant_of(int size) {
    if (size < 2) {
        return std::nullopt;
    }
    return ResourceState{size};
}

ResourceState acquire_into(ResourceProvider &provider, int size, int min_size, RngStream &rng, ProtocolTrace &trace) {
    auto got = provider.acquire(size, min_size, rng);
    trace.add(
        TraceKind::ResourceAcquired, "|0>^(" + std::to_string(got.state.size) + ")", true, got.state.size,
        got.bell_cost);
    return got.state;
}

void give_back(ResourceProvider &provider, std::optional<ResourceState> r, ProtocolTrace &trace) {
    if (!r) {
        return;
    }
    trace.add(TraceKind::ResourceReturned, "|0>^(" + std::to_string(r->size) + ")", true, r->size);
    provider.recycle(*r);
}

}  // namespace

void LogicalParityQubit::validate() const {
    if (level < 1) {
        throw SimError(ErrorCode::LevelTooLow, "logical qubit level must be >= 1");
    }
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1) > 1e-10) {
        throw SimError(ErrorCode::UnnormalizedState, "|alpha|^2 + |beta|^2 must be 1");
    }
}

void LogicalPair::validate() const {
    if (level_a < 1 || level_b < 1) {
        throw SimError(ErrorCode::LevelTooLow, "logical qubit level must be >= 1");
    }
    double n = 0;
    for (const auto &a : amps) {
        n += std::norm(a);
    }
    if (std::abs(n - 1) > 1e-10) {
        throw SimError(ErrorCode::UnnormalizedState, "pair amplitudes must be normalized");
    }
}

void ProtocolTrace::add(TraceKind kind, std::string detail, bool success, int resource_size, int64_t bell_cost) {
    events.push_back(TraceEvent{kind, std::move(detail), success, resource_size, bell_cost});
}

int64_t ProtocolTrace::bell_states_consumed() const {
    int64_t total = 0;
    for (const auto &e : events) {
        if (e.kind == TraceKind::ResourceAcquired) {
            total += e.bell_cost;
        }
    }
    return total;
}

int ProtocolTrace::fusions_attempted() const {
    return static_cast<int>(std::count_if(events.begin(), events.end(), [](const TraceEvent &e) {
        return e.kind == TraceKind::Fusion;
    }));
}

LogicalParityQubit paritysim::logical_z(const LogicalParityQubit &q) {
    return {q.alpha, -q.beta, q.level};
}

LogicalParityQubit paritysim::logical_xtheta(const LogicalParityQubit &q, double theta) {
    Mat2 u = x_rotation(theta);
    return {u[0] * q.alpha + u[1] * q.beta, u[2] * q.alpha + u[3] * q.beta, q.level};
}

LogicalParityQubit paritysim::logical_z90(const LogicalParityQubit &q) {
    return {q.alpha, Complex(0, 1) * q.beta, q.level};
}

LogicalParityQubit paritysim::measure_physical(const LogicalParityQubit &q, int outcome) {
    if (outcome != 0 && outcome != 1) {
        throw SimError(ErrorCode::InvalidArgument, "outcome must be 0 or 1");
    }
    if (q.level < 2) {
        throw SimError(ErrorCode::LevelTooLow, "measuring the last physical qubit destroys the logical state");
    }
    // Outcome 1 flips the logical value; the X correction undoes it, so the
    // amplitudes come back unchanged either way.
    return {q.alpha, q.beta, q.level - 1};
}

std::array<double, 2> paritysim::destroy_by_measurement(const LogicalParityQubit &q) {
    q.validate();
    if (q.level != 1) {
        throw SimError(ErrorCode::InvalidArgument, "use measure_physical above level 1");
    }
    return {std::norm(q.alpha), std::norm(q.beta)};
}

EncodeResult paritysim::encode_step(const LogicalParityQubit &q, ResourceState r, bool fusion_succeeds) {
    check_resource(r);
    if (q.level < 1) {
        throw SimError(ErrorCode::LevelTooLow, "logical qubit level must be >= 1");
    }
    EncodeResult out;
    out.fusion_succeeded = fusion_succeeds;
    if (fusion_succeeds) {
        out.qubit = LogicalParityQubit{q.alpha, q.beta, q.level + r.size - 2};
        return out;
    }
    out.remnant = remnant_of(r.size - 1);
    if (q.level > 1) {
        out.qubit = LogicalParityQubit{q.alpha, q.beta, q.level - 1};
    }
    return out;
}

EncodeResult paritysim::encode_step(const LogicalParityQubit &q, ResourceState r, RngStream &rng) {
    return encode_step(q, r, rng.coin());
}

std::optional<ResourceState> paritysim::join_fI(ResourceState a, ResourceState b, bool fusion_succeeds) {
    check_resource(a);
    check_resource(b);
    if (!fusion_succeeds) {
        return std::nullopt;
    }
    return ResourceState{a.size + b.size - 1};
}

std::optional<ResourceState> paritysim::join_fI(ResourceState a, ResourceState b, RngStream &rng) {
    return join_fI(a, b, rng.coin());
}

JoinResult paritysim::join_fII(ResourceState a, ResourceState b, bool fusion_succeeds) {
    check_resource(a);
    check_resource(b);
    JoinResult out;
    if (fusion_succeeds) {
        out.joined = remnant_of(a.size + b.size - 2);
    } else {
        out.remnant_a = remnant_of(a.size - 1);
        out.remnant_b = remnant_of(b.size - 1);
    }
    return out;
}

JoinResult paritysim::join_fII(ResourceState a, ResourceState b, RngStream &rng) {
    return join_fII(a, b, rng.coin());
}

EncodeResult paritysim::z90_attempt(const LogicalParityQubit &q, ResourceState r, bool fusion_succeeds) {
    EncodeResult out = encode_step(q, r, fusion_succeeds);
    if (fusion_succeeds) {
        out.qubit = logical_z90(LogicalParityQubit{q.alpha, q.beta, r.size - 1});
    }
    return out;
}

Z90Result paritysim::z90_protocol(
    const LogicalParityQubit &q, Z90Policy policy, ResourceProvider &provider, RngStream &rng) {
    q.validate();
    const int n = q.level;
    Z90Result result;
    ProtocolTrace &trace = result.trace;

    int level = n;
    ResourceState r = acquire_into(provider, n + 1, n + 1, rng, trace);
    while (true) {
        result.attempts++;
        trace.add(TraceKind::PhysicalGate, "Z90 on the highest-index physical qubit");
        auto step = z90_attempt(LogicalParityQubit{q.alpha, q.beta, level}, r, rng.coin());
        trace.add(TraceKind::Fusion, "fII re-encode into |0>^(" + std::to_string(r.size) + ")", step.fusion_succeeded, r.size);
        if (step.fusion_succeeded) {
            if (level > 1) {
                trace.add(TraceKind::Measurement, "parity of " + std::to_string(level - 1) + " original qubits");
            }
            level = step.qubit->level;
            break;
        }
        level--;
        auto remnant = step.remnant;
        if (step.lost()) {
            give_back(provider, remnant, trace);
            trace.add(TraceKind::Loss, "last physical qubit consumed by a failed fusion");
            trace.status = ProtocolStatus::LogicalLoss;
            result.status = ProtocolStatus::LogicalLoss;
            return result;
        }
        if (policy.reuse_remnant && remnant) {
            r = *remnant;
        } else {
            give_back(provider, remnant, trace);
            r = acquire_into(provider, n + 1, n + 1, rng, trace);
        }
    }

    LogicalParityQubit current = logical_z90(LogicalParityQubit{q.alpha, q.beta, level});
    std::optional<ResourceState> leftover;
    while (current.level < n) {
        int need = n - current.level + 2;
        ResourceState step;
        if (policy.reuse_remnant && leftover && leftover->size >= 3) {
            step = ResourceState{std::min(leftover->size, need)};
            leftover.reset();
        } else {
            give_back(provider, leftover, trace);
            leftover.reset();
            step = acquire_into(provider, need, need, rng, trace);
        }
        auto enc = encode_step(current, step, rng);
        trace.add(TraceKind::Fusion, "fII top-up with |0>^(" + std::to_string(step.size) + ")", enc.fusion_succeeded, step.size);
        leftover = enc.remnant;
        if (enc.lost()) {
            give_back(provider, leftover, trace);
            trace.add(TraceKind::Loss, "re-encoding failed at level 1");
            trace.status = ProtocolStatus::LogicalLoss;
            result.status = ProtocolStatus::LogicalLoss;
            return result;
        }
        current = *enc.qubit;
    }
    give_back(provider, leftover, trace);
    result.qubit = current;
    return result;
}

std::array<Complex, 4> paritysim::cnot_amplitudes(const std::array<Complex, 4> &amps, CnotOrientation orientation) {
    std::array<Complex, 4> out{};
    for (size_t a = 0; a < 2; a++) {
        for (size_t b = 0; b < 2; b++) {
            size_t na = a;
            size_t nb = b;
            if (orientation == CnotOrientation::ControlIsA) {
                nb ^= a;
            } else {
                na ^= b;
            }
            out[na + 2 * nb] = amps[a + 2 * b];
        }
    }
    return out;
}

CnotResult paritysim::cnot_protocol(
    const LogicalPair &pair,
    ResourceState gate_resource,
    bool type_i_succeeds,
    bool type_ii_succeeds,
    CnotOrientation orientation) {
    pair.validate();
    check_resource(gate_resource);
    const bool control_a = orientation == CnotOrientation::ControlIsA;
    int control = control_a ? pair.level_a : pair.level_b;
    int target = control_a ? pair.level_b : pair.level_a;
    const int m = gate_resource.size - 1;

    CnotResult result;
    auto finish = [&](int new_control, int new_target, std::array<Complex, 4> amps) {
        LogicalPair p;
        p.amps = amps;
        p.level_a = control_a ? new_control : new_target;
        p.level_b = control_a ? new_target : new_control;
        result.pair = p;
    };
    auto lose = [&](const char *why) {
        result.outcome = CnotAttemptOutcome::LogicalLoss;
        result.pair.reset();
        result.trace.add(TraceKind::Loss, why);
        result.trace.status = ProtocolStatus::LogicalLoss;
    };

    result.trace.add(TraceKind::Fusion, "fI control x resource", type_i_succeeds, gate_resource.size);
    if (!type_i_succeeds) {
        result.outcome = CnotAttemptOutcome::TypeIFailed;
        result.remnant = remnant_of(m);
        if (control == 1) {
            lose("control lost in fI failure");
        } else {
            finish(control - 1, target, pair.amps);
        }
        return result;
    }

    result.trace.add(TraceKind::Fusion, "fII target x fI output", type_ii_succeeds, gate_resource.size);
    if (!type_ii_succeeds) {
        result.outcome = CnotAttemptOutcome::TypeIIFailed;
        result.remnant = remnant_of(m);
        if (control == 1 || target == 1) {
            lose("fII failure consumed the last physical qubit");
        } else {
            finish(control - 1, target - 1, pair.amps);
        }
        return result;
    }

    if (target == 1) {
        // The target's only qubit went into the fII; nothing is left to carry it.
        lose("target had no spare physical qubit");
        return result;
    }
    if (control > 1) {
        result.trace.add(TraceKind::Measurement, "parity of " + std::to_string(control - 1) + " original control qubits");
    }
    result.outcome = CnotAttemptOutcome::Success;
    finish(m, target - 1, cnot_amplitudes(pair.amps, orientation));
    return result;
}

CnotResult paritysim::cnot_protocol(
    const LogicalPair &pair, ResourceState gate_resource, RngStream &rng, CnotOrientation orientation) {
    bool first = rng.coin();
    bool second = first ? rng.coin() : false;
    return cnot_protocol(pair, gate_resource, first, second, orientation);
}
