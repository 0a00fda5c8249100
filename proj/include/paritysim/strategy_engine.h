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


#ifndef PARITYSIM_STRATEGY_ENGINE_H
#define PARITYSIM_STRATEGY_ENGINE_H

#include <cstdint>
#include <map>
#include <unordered_map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "paritysim/fusion_kernel.h"
#include "paritysim/parity_engine.h"
#include "paritysim/rng.h"

namespace paritysim {

// ---- fusion trees and the no-recycling optimum ----

/// Plan for building |0>^(size). Leaves are Bell pairs; an inner node joins
/// its two children with `gate` and retries both on failure.
struct FusionTree {
    int size = 2;
    GateType gate = GateType::TypeI;
    std::vector<FusionTree> children;

    static FusionTree leaf();
    static FusionTree join(FusionTree a, FusionTree b, GateType gate = GateType::TypeI);

    bool is_leaf() const {
        return children.empty();
    }
    int depth() const;
    /// "2" for a leaf, "(a,b)" for an fI node, "[a,b]" for an fII node.
    std::string str() const;
    /// Throws InvalidStrategy if a node's size disagrees with its children.
    void validate() const;
};

/// Expected Bell pairs for a tree when failures discard everything:
/// 1 for a leaf, 2 (cost(a) + cost(b)) for an inner node.
double tree_expected_cost(const FusionTree &tree);

struct DpResult {
    double cost = 0;
    FusionTree tree;
};

/// Cheapest fI tree for |0>^(m) without recycling. Ties go to the smaller
/// depth, then the more balanced split. Throws SizeTooSmall for m < 2.
DpResult dp_min_cost(int m);

/// Every fI tree for |0>^(m) up to mirror symmetry.
std::vector<FusionTree> enumerate_fI_trees(int m);

// ---- closed forms ----

double z90_success_prob(int n);
double cnot_success_prob_asymptotic(int n);
/// Expected Bell pairs for a successful Z90 when every attempt builds a
/// fresh |0>^(n+1) with the optimal tree.
double z90_expected_cost_one_shot(int n);

// ---- recycling planner ----

/// Optimal construction of |0>^(m) from a small pool of partial resources.
///
/// State: up to `max_items` resources with sizes in [2, m). Moves: take a
/// new Bell pair (cost 1), fI-join two items, fII-join two items (failure
/// keeps both, one qubit shorter), or drop an item. A resource of size >= m
/// finishes the build. Values come from value iteration and are fixed after
/// construction, so one planner can be shared between threads.
class RecyclingPlanner {
   public:
    /// max_size is at most 16.
    explicit RecyclingPlanner(int max_size = 11, int max_items = 4);

    int max_size() const {
        return max_size_;
    }
    int max_items() const {
        return max_items_;
    }

    /// Expected Bell pairs to build |0>^(m) from an empty pool.
    double expected_cost(int m) const;
    /// Expected cost from a particular pool (sizes < m, at most max_items).
    double expected_cost(int m, std::vector<int> pool) const;

    /// Builds |0>^(m). Items of `pool` may be consumed; leftovers are put
    /// back. A pool item of size >= m is used as-is for free.
    int64_t build(int m, std::vector<int> &pool, RngStream &rng) const;

   private:
    struct Action {
        enum Kind : uint8_t { Bell, JoinI, JoinII, Drop } kind = Bell;
        uint8_t i = 0;
        uint8_t j = 0;
    };
    struct Table {
        std::unordered_map<uint64_t, int> index;
        std::vector<std::vector<int>> states;
        std::vector<double> value;
        std::vector<Action> policy;
    };

    static uint64_t key(const std::vector<int> &sorted_items);
    const Table &table(int m) const;
    void solve(int m);

    int max_size_;
    int max_items_;
    std::vector<Table> tables_;
};

/// Process-wide planner covering sizes up to 16.
const RecyclingPlanner &default_planner();

// ---- strategies ----

struct Z90Strategy {
    /// true: every attempt uses a fresh |0>^(n+1).
    /// false: reuse failure remnants and top up in small steps.
    bool one_shot = true;
};

struct CnotStrategy {
    /// Pre-encode the control while its level is below this.
    int pre_encode_threshold = 6;
    /// Pre-encode resource size; 0 selects 8, or n + 1 when that is smaller.
    int pre_encode_resource = 0;
    int gate_resource = 5;
    /// Level both qubits are brought back to; 0 selects n.
    int post_encode_target = 0;
    /// Largest resource used per post-encoding step.
    int post_encode_resource = 5;
    /// Whether post-encoding the control back up is charged.
    bool post_encode_control = true;
    /// Whether losing a qubit while post-encoding counts as a failed gate.
    bool count_post_encode_losses = false;
    /// With recycling, a pooled resource at most this much smaller than the
    /// requested size is used directly.
    int pool_slack = 1;
};

struct StrategySpec {
    /// Explicit build plan. Empty: the optimal fI tree without recycling,
    /// the recycling planner with it.
    std::optional<FusionTree> build_plan;
    bool recycle = false;
    Z90Strategy z90;
    CnotStrategy cnot;

    /// Throws InvalidStrategy on nonsensical sizes or thresholds.
    void validate() const;
    std::string describe() const;
};

// ---- accounting ----

/// Bell pairs charged during one trial.
class CostLedger {
   public:
    void charge(int64_t bell_pairs, const char *what);
    int64_t total() const {
        return total_;
    }
    /// Per-label totals.
    const std::map<std::string, int64_t> &breakdown() const {
        return breakdown_;
    }

   private:
    int64_t total_ = 0;
    std::map<std::string, int64_t> breakdown_;
};

struct MeanEstimate {
    double mean = 0;
    double std_error = 0;
};

/// Integer counters over trials. Merging is exact and order independent.
struct SummaryStats {
    int64_t trials = 0;
    int64_t successes = 0;
    int64_t cost_all = 0;
    int64_t cost_success = 0;
    /// Sums of squared per-trial costs (all trials, successful trials).
    unsigned __int128 cost_sq_all = 0;
    unsigned __int128 cost_sq_success = 0;

    void record(bool success, int64_t cost);
    void merge(const SummaryStats &other);
    bool operator==(const SummaryStats &other) const = default;

    double success_rate() const;
    double success_std_error() const;
    /// Mean cost over successful trials.
    MeanEstimate conditional_cost() const;
    /// Mean cost over all trials.
    MeanEstimate unconditional_cost() const;
    /// Total cost divided by the number of successes.
    MeanEstimate cost_per_success() const;
};

// ---- Monte Carlo ----

struct RunOptions {
    int64_t trials = 100000;
    uint64_t seed = 1;
    /// 0 picks the hardware concurrency.
    int threads = 1;
};

/// Mean Bell pairs per completed |0>^(m). Every trial succeeds.
SummaryStats mc_build_resource(int m, const StrategySpec &strategy, const RunOptions &options);

/// z90_protocol at level n including resource construction. Success means
/// the logical qubit came back at level n with Z90 applied.
SummaryStats mc_z90(int n, const StrategySpec &strategy, const RunOptions &options);

/// CNOT between two level-n qubits with pre-encoding, repeated attempts and
/// post-encoding per `strategy.cnot`.
SummaryStats mc_cnot(int n, const StrategySpec &strategy, const RunOptions &options);

// ---- search ----

struct SearchResult {
    StrategySpec strategy;
    double cost = 0;
    /// Whether `cost` is exact or a Monte-Carlo mean.
    bool exact = true;
    size_t candidates_evaluated = 0;
};

/// Cheapest candidate for building |0>^(m). Exact costs where available,
/// otherwise Monte Carlo with the same seed for every candidate. Ties go to
/// the shallower plan. Throws EmptySpace on an empty candidate list.
SearchResult strategy_search(int m, const std::vector<StrategySpec> &candidates, const RunOptions &budget);

/// Every fI tree for m, without recycling, plus the recycling planner.
std::vector<StrategySpec> default_candidate_space(int m);

}  // namespace paritysim

#endif
