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


#include "paritysim/strategy_engine.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>
#include <utility>

#include "paritysim/errors.h"

using namespace paritysim;

namespace {

constexpr int kMaxTreeSize = 64;

/// Optimal fI trees, computed once.
const std::vector<DpResult> &optimal_trees() {
    static const std::vector<DpResult> table = [] {
        std::vector<DpResult> t(kMaxTreeSize + 1);
        t[2] = DpResult{1, FusionTree::leaf()};
        for (int m = 3; m <= kMaxTreeSize; m++) {
            std::optional<DpResult> best;
            for (int a = (m + 1) / 2; a >= 2; a--) {
                int b = m + 1 - a;
                double cost = 2 * (t[a].cost + t[b].cost);
                FusionTree tree = FusionTree::join(t[a].tree, t[b].tree);
                bool better = !best || cost < best->cost - 1e-9 ||
                              (std::abs(cost - best->cost) <= 1e-9 && tree.depth() < best->tree.depth());
                if (better) {
                    best = DpResult{cost, std::move(tree)};
                }
            }
            t[m] = std::move(*best);
        }
        return t;
    }();
    return table;
}

bool has_fII(const FusionTree &t) {
    if (t.is_leaf()) {
        return false;
    }
    return t.gate == GateType::TypeII || has_fII(t.children[0]) || has_fII(t.children[1]);
}

/// Removes and returns the smallest pool item >= size, if any.
std::optional<int> take_at_least(std::vector<int> &pool, int size) {
    auto best = pool.end();
    for (auto it = pool.begin(); it != pool.end(); ++it) {
        if (*it >= size && (best == pool.end() || *it < *best)) {
            best = it;
        }
    }
    if (best == pool.end()) {
        return std::nullopt;
    }
    int v = *best;
    pool.erase(best);
    return v;
}

/// Removes and returns the largest pool item in [lo, hi), if any.
std::optional<int> take_largest_in(std::vector<int> &pool, int lo, int hi) {
    auto best = pool.end();
    for (auto it = pool.begin(); it != pool.end(); ++it) {
        if (*it >= lo && *it < hi && (best == pool.end() || *it > *best)) {
            best = it;
        }
    }
    if (best == pool.end()) {
        return std::nullopt;
    }
    int v = *best;
    pool.erase(best);
    return v;
}

/// One sampled execution of a tree. With a pool, stored resources large
/// enough for a node are used directly and fII failure remnants are kept.
int64_t sample_tree(const FusionTree &t, std::vector<int> *pool, RngStream &rng) {
    if (pool) {
        if (take_at_least(*pool, t.size)) {
            return 0;
        }
    }
    if (t.is_leaf()) {
        return 1;
    }
    int64_t cost = 0;
    while (true) {
        cost += sample_tree(t.children[0], pool, rng);
        cost += sample_tree(t.children[1], pool, rng);
        if (rng.coin()) {
            return cost;
        }
        if (pool && t.gate == GateType::TypeII) {
            for (const auto &c : t.children) {
                if (c.size - 1 >= 2) {
                    pool->push_back(c.size - 1);
                }
            }
        }
    }
}

/// Resource source for protocol runs: builds with the strategy and, when
/// recycling, keeps a per-trial pool of leftovers.
class Factory final : public ResourceProvider {
   public:
    Factory(const StrategySpec &spec, CostLedger &ledger) : spec_(spec), ledger_(ledger) {
    }

    Acquired acquire(int size, int min_size, RngStream &rng) override {
        if (spec_.recycle) {
            if (take_at_least(pool_, size)) {
                return {ResourceState{size}, 0};
            }
            if (auto got = take_largest_in(pool_, std::max(2, min_size), size)) {
                return {ResourceState{*got}, 0};
            }
        }
        int64_t cost = build(size, rng);
        ledger_.charge(cost, "resource");
        return {ResourceState{size}, cost};
    }

    void recycle(ResourceState remnant) override {
        if (spec_.recycle && remnant.size >= 2) {
            pool_.push_back(remnant.size);
        }
    }

    int64_t build(int size, RngStream &rng) {
        if (spec_.recycle && size <= default_planner().max_size()) {
            return default_planner().build(size, pool_, rng);
        }
        if (size > kMaxTreeSize) {
            throw SimError(ErrorCode::InvalidStrategy, "resource size " + std::to_string(size) + " is too large");
        }
        return sample_tree(optimal_trees()[size].tree, spec_.recycle ? &pool_ : nullptr, rng);
    }

   private:
    const StrategySpec &spec_;
    CostLedger &ledger_;
    std::vector<int> pool_;
};

struct TrialResult {
    bool success = false;
    int64_t cost = 0;
};

SummaryStats run_trials(const RunOptions &options, const std::function<TrialResult(RngStream &)> &trial) {
    if (options.trials < 1) {
        throw SimError(ErrorCode::ZeroTrials, "at least one trial is required");
    }
    int64_t threads = options.threads > 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<int64_t>(threads, options.trials);
    std::vector<SummaryStats> parts(static_cast<size_t>(threads));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
    auto work = [&](int64_t t) {
        try {
            int64_t begin = options.trials * t / threads;
            int64_t end = options.trials * (t + 1) / threads;
            for (int64_t i = begin; i < end; i++) {
                RngStream rng(options.seed, static_cast<uint64_t>(i));
                TrialResult r = trial(rng);
                parts[static_cast<size_t>(t)].record(r.success, r.cost);
            }
        } catch (...) {
            errors[static_cast<size_t>(t)] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (int64_t t = 0; t < threads; t++) {
            pool.emplace_back(work, t);
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    SummaryStats total;
    for (const auto &p : parts) {
        total.merge(p);
    }
    return total;
}

MeanEstimate mean_of(int64_t count, int64_t sum, unsigned __int128 sum_sq) {
    MeanEstimate e;
    if (count <= 0) {
        e.mean = std::nan("");
        e.std_error = std::nan("");
        return e;
    }
    double n = static_cast<double>(count);
    e.mean = static_cast<double>(sum) / n;
    if (count > 1) {
        double var = (static_cast<double>(sum_sq) - n * e.mean * e.mean) / (n - 1);
        e.std_error = std::sqrt(std::max(0.0, var) / n);
    }
    return e;
}

void enumerate_into(int m, std::vector<std::vector<FusionTree>> &memo) {
    if (!memo[m].empty()) {
        return;
    }
    if (m == 2) {
        memo[2].push_back(FusionTree::leaf());
        return;
    }
    for (int a = 2; a <= (m + 1) / 2; a++) {
        int b = m + 1 - a;
        enumerate_into(a, memo);
        enumerate_into(b, memo);
        for (size_t i = 0; i < memo[a].size(); i++) {
            for (size_t j = (a == b ? i : 0); j < memo[b].size(); j++) {
                memo[m].push_back(FusionTree::join(memo[a][i], memo[b][j]));
            }
        }
    }
}

}  // namespace

// ---- FusionTree ----

FusionTree FusionTree::leaf() {
    return FusionTree{};
}

FusionTree FusionTree::join(FusionTree a, FusionTree b, GateType gate) {
    FusionTree t;
    t.gate = gate;
    t.size = a.size + b.size - (gate == GateType::TypeI ? 1 : 2);
    t.children.push_back(std::move(a));
    t.children.push_back(std::move(b));
    return t;
}

int FusionTree::depth() const {
    if (is_leaf()) {
        return 0;
    }
    return 1 + std::max(children[0].depth(), children[1].depth());
}

std::string FusionTree::str() const {
    if (is_leaf()) {
        return "2";
    }
    bool fI = gate == GateType::TypeI;
    return std::string(fI ? "(" : "[") + children[0].str() + "," + children[1].str() + (fI ? ")" : "]");
}

void FusionTree::validate() const {
    if (is_leaf()) {
        if (size != 2) {
            throw SimError(ErrorCode::InvalidStrategy, "a leaf is a Bell pair of size 2");
        }
        return;
    }
    if (children.size() != 2) {
        throw SimError(ErrorCode::InvalidStrategy, "inner nodes join exactly two resources");
    }
    children[0].validate();
    children[1].validate();
    int expected = children[0].size + children[1].size - (gate == GateType::TypeI ? 1 : 2);
    if (size != expected || size < 2) {
        throw SimError(ErrorCode::InvalidStrategy, "node size " + std::to_string(size) + " does not match its children");
    }
}

double paritysim::tree_expected_cost(const FusionTree &tree) {
    if (tree.is_leaf()) {
        return 1;
    }
    return 2 * (tree_expected_cost(tree.children[0]) + tree_expected_cost(tree.children[1]));
}

DpResult paritysim::dp_min_cost(int m) {
    if (m < 2) {
        throw SimError(ErrorCode::SizeTooSmall, "resource size must be at least 2");
    }
    if (m > kMaxTreeSize) {
        throw SimError(ErrorCode::InvalidArgument, "resource size above " + std::to_string(kMaxTreeSize));
    }
    return optimal_trees()[m];
}

std::vector<FusionTree> paritysim::enumerate_fI_trees(int m) {
    if (m < 2) {
        throw SimError(ErrorCode::SizeTooSmall, "resource size must be at least 2");
    }
    if (m > 14) {
        throw SimError(ErrorCode::InvalidArgument, "tree enumeration is limited to m <= 14");
    }
    std::vector<std::vector<FusionTree>> memo(static_cast<size_t>(m) + 1);
    enumerate_into(m, memo);
    return memo[m];
}

// ---- closed forms ----

double paritysim::z90_success_prob(int n) {
    if (n < 1) {
        throw SimError(ErrorCode::LevelTooLow, "level must be >= 1");
    }
    return 1 - std::ldexp(1.0, -n);
}

double paritysim::cnot_success_prob_asymptotic(int n) {
    if (n < 1) {
        throw SimError(ErrorCode::LevelTooLow, "level must be >= 1");
    }
    return 1 - std::pow(0.75, n);
}

double paritysim::z90_expected_cost_one_shot(int n) {
    double p = z90_success_prob(n);
    double attempts = 0;
    for (int k = 1; k <= n; k++) {
        attempts += k * std::ldexp(1.0, -k);
    }
    return dp_min_cost(n + 1).cost * attempts / p;
}

// ---- RecyclingPlanner ----

RecyclingPlanner::RecyclingPlanner(int max_size, int max_items) : max_size_(max_size), max_items_(max_items) {
    if (max_size < 2 || max_size > 16 || max_items < 2 || max_items > 8) {
        throw SimError(ErrorCode::InvalidArgument, "planner needs 2 <= max_size <= 16 and 2 <= max_items <= 8");
    }
    tables_.resize(static_cast<size_t>(max_size) + 1);
    for (int m = 3; m <= max_size; m++) {
        solve(m);
    }
}

uint64_t RecyclingPlanner::key(const std::vector<int> &sorted_items) {
    uint64_t k = sorted_items.size();
    for (size_t i = 0; i < sorted_items.size(); i++) {
        k |= static_cast<uint64_t>(sorted_items[i]) << (4 * i + 4);
    }
    return k;
}

void RecyclingPlanner::solve(int m) {
    Table &t = tables_[static_cast<size_t>(m)];
    std::vector<int> cur;
    std::function<void(int)> gen = [&](int lo) {
        t.index.emplace(key(cur), static_cast<int>(t.states.size()));
        t.states.push_back(cur);
        if (static_cast<int>(cur.size()) == max_items_) {
            return;
        }
        for (int v = lo; v < m; v++) {
            cur.push_back(v);
            gen(v);
            cur.pop_back();
        }
    };
    gen(2);

    // Successor: -1 for a finished build, -2 for an unrepresentable pool.
    auto successor = [&](std::vector<int> items) {
        std::erase_if(items, [](int x) {
            return x < 2;
        });
        if (std::any_of(items.begin(), items.end(), [m](int x) {
                return x >= m;
            })) {
            return -1;
        }
        if (static_cast<int>(items.size()) > max_items_) {
            return -2;
        }
        std::sort(items.begin(), items.end());
        return t.index.at(key(items));
    };

    struct Option {
        Action action;
        double cost;
        int next[2];
        int outcomes;
    };
    std::vector<std::vector<Option>> options(t.states.size());
    for (size_t s = 0; s < t.states.size(); s++) {
        const auto &st = t.states[s];
        auto without = [&](size_t i, size_t j) {
            std::vector<int> rest;
            for (size_t k = 0; k < st.size(); k++) {
                if (k != i && k != j) {
                    rest.push_back(st[k]);
                }
            }
            return rest;
        };
        auto with = [](std::vector<int> v, std::initializer_list<int> extra) {
            v.insert(v.end(), extra);
            return v;
        };
        int bell = successor(with(st, {2}));
        if (bell != -2) {
            options[s].push_back({{Action::Bell, 0, 0}, 1, {bell, 0}, 1});
        }
        for (size_t i = 0; i < st.size(); i++) {
            for (size_t j = i + 1; j < st.size(); j++) {
                int a = st[i];
                int b = st[j];
                auto rest = without(i, j);
                auto ui = static_cast<uint8_t>(i);
                auto uj = static_cast<uint8_t>(j);
                options[s].push_back(
                    {{Action::JoinI, ui, uj}, 0, {successor(with(rest, {a + b - 1})), successor(rest)}, 2});
                int ok = successor(with(rest, {a + b - 2}));
                int bad = successor(with(rest, {a - 1, b - 1}));
                if (ok != -2 && bad != -2) {
                    options[s].push_back({{Action::JoinII, ui, uj}, 0, {ok, bad}, 2});
                }
            }
            options[s].push_back({{Action::Drop, static_cast<uint8_t>(i), 0}, 0, {successor(without(i, i)), 0}, 1});
        }
    }

    const double inf = 1e18;
    t.value.assign(t.states.size(), inf);
    t.policy.assign(t.states.size(), Action{});
    auto val = [&](int idx) {
        return idx == -1 ? 0.0 : t.value[static_cast<size_t>(idx)];
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t s = 0; s < t.states.size(); s++) {
            for (const auto &o : options[s]) {
                double v = o.cost + (o.outcomes == 1 ? val(o.next[0]) : 0.5 * (val(o.next[0]) + val(o.next[1])));
                if (v < t.value[s] - 1e-12) {
                    t.value[s] = v;
                    t.policy[s] = o.action;
                    changed = true;
                }
            }
        }
    }
}

const RecyclingPlanner::Table &RecyclingPlanner::table(int m) const {
    if (m < 3 || m > max_size_) {
        throw SimError(ErrorCode::InvalidArgument, "planner covers sizes 3.." + std::to_string(max_size_));
    }
    return tables_[static_cast<size_t>(m)];
}

double RecyclingPlanner::expected_cost(int m) const {
    return expected_cost(m, {});
}

double RecyclingPlanner::expected_cost(int m, std::vector<int> pool) const {
    if (m < 2) {
        throw SimError(ErrorCode::SizeTooSmall, "resource size must be at least 2");
    }
    if (std::any_of(pool.begin(), pool.end(), [m](int x) {
            return x >= m;
        })) {
        return 0;
    }
    if (m == 2) {
        return 1;
    }
    std::sort(pool.begin(), pool.end());
    const Table &t = table(m);
    auto it = t.index.find(key(pool));
    if (it == t.index.end()) {
        throw SimError(ErrorCode::InvalidArgument, "pool is not a planner state");
    }
    return t.value[static_cast<size_t>(it->second)];
}

int64_t RecyclingPlanner::build(int m, std::vector<int> &pool, RngStream &rng) const {
    if (m < 2) {
        throw SimError(ErrorCode::SizeTooSmall, "resource size must be at least 2");
    }
    if (take_at_least(pool, m)) {
        return 0;
    }
    if (m == 2) {
        return 1;
    }
    const Table &t = table(m);
    std::erase_if(pool, [](int x) {
        return x < 2;
    });
    std::sort(pool.begin(), pool.end());
    size_t keep = std::min(pool.size(), static_cast<size_t>(max_items_));
    std::vector<int> items(pool.end() - static_cast<std::ptrdiff_t>(keep), pool.end());
    pool.resize(pool.size() - keep);

    int64_t cost = 0;
    while (true) {
        std::sort(items.begin(), items.end());
        auto done = std::max_element(items.begin(), items.end());
        if (done != items.end() && *done >= m) {
            items.erase(done);
            pool.insert(pool.end(), items.begin(), items.end());
            return cost;
        }
        const Action &a = t.policy[static_cast<size_t>(t.index.at(key(items)))];
        switch (a.kind) {
            case Action::Bell:
                cost++;
                items.push_back(2);
                break;
            case Action::JoinI:
            case Action::JoinII: {
                int x = items[a.i];
                int y = items[a.j];
                items.erase(items.begin() + a.j);
                items.erase(items.begin() + a.i);
                bool ok = rng.coin();
                if (a.kind == Action::JoinI) {
                    if (ok) {
                        items.push_back(x + y - 1);
                    }
                } else if (ok) {
                    items.push_back(x + y - 2);
                } else {
                    for (int r : {x - 1, y - 1}) {
                        if (r >= 2) {
                            items.push_back(r);
                        }
                    }
                }
                break;
            }
            case Action::Drop:
                pool.push_back(items[a.i]);
                items.erase(items.begin() + a.i);
                break;
        }
    }
}

const RecyclingPlanner &paritysim::default_planner() {
    static const RecyclingPlanner planner(16, 4);
    return planner;
}

// ---- StrategySpec ----

void StrategySpec::validate() const {
    if (build_plan) {
        build_plan->validate();
    }
    const CnotStrategy &c = cnot;
    if (c.pre_encode_threshold < 1) {
        throw SimError(ErrorCode::InvalidStrategy, "pre-encode threshold must be >= 1");
    }
    if (c.pre_encode_resource != 0 && c.pre_encode_resource < 3) {
        throw SimError(ErrorCode::InvalidStrategy, "pre-encode resource must have >= 3 qubits");
    }
    if (c.gate_resource < 2) {
        throw SimError(ErrorCode::InvalidStrategy, "gate resource must have >= 2 qubits");
    }
    if (c.post_encode_resource < 3) {
        throw SimError(ErrorCode::InvalidStrategy, "post-encode resource must have >= 3 qubits");
    }
    if (c.post_encode_target < 0 || c.pool_slack < 0) {
        throw SimError(ErrorCode::InvalidStrategy, "negative target or slack");
    }
}

std::string StrategySpec::describe() const {
    std::ostringstream os;
    os << "plan=" << (build_plan ? build_plan->str() : (recycle ? std::string("planner") : std::string("optimal-fI")))
       << " recycle=" << (recycle ? "true" : "false") << " z90=" << (z90.one_shot ? "one-shot" : "reuse");
    return os.str();
}

// ---- accounting ----

void CostLedger::charge(int64_t bell_pairs, const char *what) {
    if (bell_pairs < 0) {
        throw SimError(ErrorCode::InvalidArgument, "negative charge");
    }
    total_ += bell_pairs;
    breakdown_[what] += bell_pairs;
}

void SummaryStats::record(bool success, int64_t cost) {
    auto sq = static_cast<unsigned __int128>(cost) * static_cast<unsigned __int128>(cost);
    trials++;
    cost_all += cost;
    cost_sq_all += sq;
    if (success) {
        successes++;
        cost_success += cost;
        cost_sq_success += sq;
    }
}

void SummaryStats::merge(const SummaryStats &o) {
    trials += o.trials;
    successes += o.successes;
    cost_all += o.cost_all;
    cost_success += o.cost_success;
    cost_sq_all += o.cost_sq_all;
    cost_sq_success += o.cost_sq_success;
}

double SummaryStats::success_rate() const {
    return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
}

double SummaryStats::success_std_error() const {
    if (trials == 0) {
        return 0;
    }
    double p = success_rate();
    return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

MeanEstimate SummaryStats::conditional_cost() const {
    return mean_of(successes, cost_success, cost_sq_success);
}

MeanEstimate SummaryStats::unconditional_cost() const {
    return mean_of(trials, cost_all, cost_sq_all);
}

MeanEstimate SummaryStats::cost_per_success() const {
    MeanEstimate e;
    if (successes == 0) {
        e.mean = std::nan("");
        e.std_error = std::nan("");
        return e;
    }
    double n = static_cast<double>(trials);
    double r = static_cast<double>(cost_all) / static_cast<double>(successes);
    e.mean = r;
    if (trials > 1) {
        double ss = static_cast<double>(cost_sq_all) - 2 * r * static_cast<double>(cost_success) +
                    r * r * static_cast<double>(successes);
        double s_bar = static_cast<double>(successes) / n;
        e.std_error = std::sqrt(std::max(0.0, ss) / (n * (n - 1))) / s_bar;
    }
    return e;
}

// ---- Monte Carlo ----

SummaryStats paritysim::mc_build_resource(int m, const StrategySpec &strategy, const RunOptions &options) {
    if (m < 2) {
        throw SimError(ErrorCode::SizeTooSmall, "resource size must be at least 2");
    }
    strategy.validate();
    if (strategy.build_plan && strategy.build_plan->size != m) {
        throw SimError(
            ErrorCode::InvalidStrategy,
            "plan builds |0>^(" + std::to_string(strategy.build_plan->size) + "), not |0>^(" + std::to_string(m) + ")");
    }
    const bool planner = !strategy.build_plan && strategy.recycle && m <= default_planner().max_size();
    const FusionTree &tree = strategy.build_plan ? *strategy.build_plan : dp_min_cost(std::min(m, kMaxTreeSize)).tree;
    return run_trials(options, [&](RngStream &rng) {
        std::vector<int> pool;
        int64_t cost = planner ? default_planner().build(m, pool, rng)
                               : sample_tree(tree, strategy.recycle ? &pool : nullptr, rng);
        return TrialResult{true, cost};
    });
}

SummaryStats paritysim::mc_z90(int n, const StrategySpec &strategy, const RunOptions &options) {
    if (n < 1) {
        throw SimError(ErrorCode::LevelTooLow, "level must be >= 1");
    }
    strategy.validate();
    return run_trials(options, [&](RngStream &rng) {
        CostLedger ledger;
        Factory factory(strategy, ledger);
        Z90Policy policy{!strategy.z90.one_shot};
        Z90Result r = z90_protocol(LogicalParityQubit{1, 0, n}, policy, factory, rng);
        bool ok = r.status == ProtocolStatus::Success && r.qubit && r.qubit->level == n;
        return TrialResult{ok, ledger.total()};
    });
}

SummaryStats paritysim::mc_cnot(int n, const StrategySpec &strategy, const RunOptions &options) {
    if (n < 1) {
        throw SimError(ErrorCode::LevelTooLow, "level must be >= 1");
    }
    strategy.validate();
    const CnotStrategy &cs = strategy.cnot;
    const int pre = cs.pre_encode_resource ? cs.pre_encode_resource : std::min(8, n + 1);
    const int target_level = cs.post_encode_target ? cs.post_encode_target : n;
    return run_trials(options, [&](RngStream &rng) {
        CostLedger ledger;
        Factory factory(strategy, ledger);
        auto get = [&](int k) {
            int lo = strategy.recycle ? std::min(k, std::max(3, k - cs.pool_slack)) : k;
            return factory.acquire(k, lo, rng).state;
        };
        auto give = [&](const std::optional<ResourceState> &r) {
            if (r) {
                factory.recycle(*r);
            }
        };

        LogicalPair pair;
        pair.level_a = n;
        pair.level_b = n;
        bool lost = false;
        while (!lost) {
            while (pair.level_a < cs.pre_encode_threshold) {
                auto enc = encode_step(LogicalParityQubit{1, 0, pair.level_a}, get(pre), rng);
                give(enc.remnant);
                if (enc.lost()) {
                    lost = true;
                    break;
                }
                pair.level_a = enc.qubit->level;
            }
            if (lost) {
                break;
            }
            CnotResult res = cnot_protocol(pair, get(cs.gate_resource), rng);
            give(res.remnant);
            if (res.outcome == CnotAttemptOutcome::LogicalLoss) {
                lost = true;
                break;
            }
            pair = *res.pair;
            if (res.outcome == CnotAttemptOutcome::Success) {
                break;
            }
        }

        auto post_encode = [&](int level) {
            while (level < target_level) {
                int k = std::max(3, std::min(cs.post_encode_resource, target_level - level + 2));
                auto enc = encode_step(LogicalParityQubit{1, 0, level}, get(k), rng);
                give(enc.remnant);
                if (enc.lost()) {
                    if (cs.count_post_encode_losses) {
                        return false;
                    }
                    level = 1;
                } else {
                    level = enc.qubit->level;
                }
            }
            return true;
        };
        if (!lost) {
            lost = !post_encode(pair.level_b);
            if (cs.post_encode_control) {
                lost = !post_encode(pair.level_a) || lost;
            }
        }
        return TrialResult{!lost, ledger.total()};
    });
}

// ---- search ----

SearchResult paritysim::strategy_search(int m, const std::vector<StrategySpec> &candidates, const RunOptions &budget) {
    if (candidates.empty()) {
        throw SimError(ErrorCode::EmptySpace, "no candidate strategies");
    }
    SearchResult best;
    int best_depth = 0;
    bool have = false;
    for (const auto &c : candidates) {
        c.validate();
        double cost = 0;
        bool exact = true;
        int depth = 0;
        if (c.build_plan) {
            if (c.build_plan->size != m) {
                throw SimError(ErrorCode::InvalidStrategy, "candidate " + c.build_plan->str() + " does not build size " + std::to_string(m));
            }
            depth = c.build_plan->depth();
            if (c.recycle && has_fII(*c.build_plan)) {
                cost = mc_build_resource(m, c, budget).unconditional_cost().mean;
                exact = false;
            } else {
                cost = tree_expected_cost(*c.build_plan);
            }
        } else {
            depth = dp_min_cost(m).tree.depth();
            if (c.recycle && m <= default_planner().max_size()) {
                cost = m == 2 ? 1 : default_planner().expected_cost(m);
            } else if (c.recycle) {
                cost = mc_build_resource(m, c, budget).unconditional_cost().mean;
                exact = false;
            } else {
                cost = dp_min_cost(m).cost;
            }
        }
        bool better = !have || cost < best.cost - 1e-9 || (std::abs(cost - best.cost) <= 1e-9 && depth < best_depth);
        if (better) {
            best.strategy = c;
            best.cost = cost;
            best.exact = exact;
            best_depth = depth;
            have = true;
        }
    }
    best.candidates_evaluated = candidates.size();
    return best;
}

std::vector<StrategySpec> paritysim::default_candidate_space(int m) {
    std::vector<StrategySpec> out;
    for (auto &t : enumerate_fI_trees(m)) {
        StrategySpec s;
        s.build_plan = std::move(t);
        out.push_back(std::move(s));
    }
    StrategySpec planner;
    planner.recycle = true;
    out.push_back(planner);
    return out;
}
