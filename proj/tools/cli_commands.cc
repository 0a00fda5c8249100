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


#include "cli_commands.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "paritysim/errors.h"
#include "paritysim/verification.h"

namespace paritysim::cli {

namespace {

uint64_t column_seed(uint64_t seed, uint64_t tag, int row) {
    return RngStream::mix(RngStream::mix(seed ^ (tag * 0x9E3779B97F4A7C15ULL)) + static_cast<uint64_t>(row));
}

RunOptions options_for(const RunConfig &c, uint64_t tag, int row) {
    RunOptions o;
    o.trials = c.trials;
    o.seed = column_seed(c.seed, tag, row);
    o.threads = c.threads;
    return o;
}

std::string format_cell(const Cell &cell) {
    if (const auto *i = std::get_if<int64_t>(&cell)) {
        return std::to_string(*i);
    }
    if (const auto *d = std::get_if<double>(&cell)) {
        if (std::isnan(*d)) {
            return "nan";
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f", *d);
        return buf;
    }
    return std::get<std::string>(cell);
}

std::string meta_line(const Table &t) {
    std::string s = t.name;
    for (const auto &[k, v] : t.meta) {
        s += " " + k + "=" + v;
    }
    return s;
}

void add_common_meta(Table &t, const RunConfig &c) {
    t.meta.emplace_back("seed", std::to_string(c.seed));
    t.meta.emplace_back("trials", std::to_string(c.trials));
    t.meta.emplace_back("rows", std::to_string(c.row_lo) + ".." + std::to_string(c.row_hi));
}

bool parse_bool(const std::string &v) {
    if (v == "true" || v == "1") {
        return true;
    }
    if (v == "false" || v == "0") {
        return false;
    }
    throw std::invalid_argument("expected true or false, got '" + v + "'");
}

int parse_int(const std::string &v) {
    size_t used = 0;
    int x = std::stoi(v, &used);
    if (used != v.size()) {
        throw std::invalid_argument("not an integer: '" + v + "'");
    }
    return x;
}

std::string output_path(const RunConfig &c) {
    if (!c.out.empty()) {
        return c.out;
    }
    std::string ext = c.format == "markdown" ? "md" : c.format;
    return c.command + "." + ext;
}

int emit(const Table &t, const RunConfig &c, std::ostream &out, std::ostream &err) {
    std::string path = output_path(c);
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot open " << path << " for writing\n";
        return kIoError;
    }
    f << render(t, c.format);
    f.close();
    if (!f) {
        err << "error: failed writing " << path << "\n";
        return kIoError;
    }
    out << render(t, "markdown");
    for (const auto &w : t.warnings) {
        out << "warning: " << w << "\n";
    }
    out << "wrote " << path << "\n";
    return kOk;
}

int run_verify(const RunConfig &c, std::ostream &out, std::ostream &err) {
    std::vector<std::string> suites = c.suites;
    if (suites.empty()) {
        suites = {"povm", "transitions", "gates", "dp", "formulas"};
    }
    CheckReport report;
    for (const auto &s : suites) {
        if (s == "povm") {
            report.append(verify_povm());
        } else if (s == "transitions") {
            report.append(verify_transitions(c.max_level));
        } else if (s == "gates") {
            report.append(verify_gates(20, c.seed));
        } else if (s == "dp") {
            report.append(verify_dp(10));
        } else if (s == "formulas") {
            report.append(verify_formulas());
        } else {
            err << "error: unknown suite " << s << "\n";
            return kBadArguments;
        }
    }
    for (const auto &r : report.checks) {
        out << (r.passed ? "PASS " : "FAIL ") << r.suite << "/" << r.name << ": " << r.detail << "\n";
    }
    out << report.checks.size() - static_cast<size_t>(report.failures()) << "/" << report.checks.size()
        << " checks passed\n";
    return report.all_passed() ? kOk : kVerificationFailed;
}

}  // namespace

std::pair<int, int> parse_rows(const std::string &text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            int v = parse_int(text);
            return {v, v};
        }
        int lo = parse_int(text.substr(0, dots));
        int hi = parse_int(text.substr(dots + 2));
        if (lo > hi) {
            throw std::invalid_argument("empty row range " + text);
        }
        return {lo, hi};
    } catch (const std::out_of_range &) {
        throw std::invalid_argument("row range out of range: " + text);
    }
}

StrategySpec apply_overrides(StrategySpec spec, const std::vector<std::string> &overrides) {
    for (const auto &kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("override must look like key=value: " + kv);
        }
        std::string k = kv.substr(0, eq);
        std::string v = kv.substr(eq + 1);
        CnotStrategy &c = spec.cnot;
        if (k == "pre_encode_threshold") {
            c.pre_encode_threshold = parse_int(v);
        } else if (k == "pre_encode_resource") {
            c.pre_encode_resource = parse_int(v);
        } else if (k == "gate_resource") {
            c.gate_resource = parse_int(v);
        } else if (k == "post_encode_target") {
            c.post_encode_target = parse_int(v);
        } else if (k == "post_encode_resource") {
            c.post_encode_resource = parse_int(v);
        } else if (k == "post_encode_control") {
            c.post_encode_control = parse_bool(v);
        } else if (k == "count_post_encode_losses") {
            c.count_post_encode_losses = parse_bool(v);
        } else if (k == "pool_slack") {
            c.pool_slack = parse_int(v);
        } else if (k == "z90_one_shot") {
            spec.z90.one_shot = parse_bool(v);
        } else {
            throw std::invalid_argument("unknown strategy key: " + k);
        }
    }
    spec.validate();
    return spec;
}

Table compute_table1(const RunConfig &c) {
    Table t;
    t.name = "table1";
    add_common_meta(t, c);
    t.meta.emplace_back("recycle", c.recycle ? "true" : "false");
    t.columns = {"m",     "a_dp",  "b_mc",  "c_analytic", "c_mc",           "d_analytic",   "d_mc",
                 "e_mc",  "b_se",  "c_se",  "d_se",       "e_se",           "d_unconditional", "e_conditional"};
    StrategySpec one_shot;
    StrategySpec recycling = apply_overrides(StrategySpec{}, c.overrides);
    recycling.recycle = true;
    recycling.z90.one_shot = false;
    recycling = apply_overrides(recycling, c.overrides);
    const double nan = std::nan("");
    for (int m = c.row_lo; m <= c.row_hi; m++) {
        std::vector<Cell> row;
        row.emplace_back(int64_t{m});
        row.emplace_back(dp_min_cost(m).cost);
        SummaryStats b;
        SummaryStats e;
        if (c.recycle) {
            b = mc_build_resource(m, recycling, options_for(c, 1, m));
            e = mc_z90(m, recycling, options_for(c, 3, m));
        }
        SummaryStats d = mc_z90(m, one_shot, options_for(c, 2, m));
        row.emplace_back(c.recycle ? b.unconditional_cost().mean : nan);
        row.emplace_back(z90_success_prob(m));
        row.emplace_back(d.success_rate());
        row.emplace_back(z90_expected_cost_one_shot(m));
        row.emplace_back(d.conditional_cost().mean);
        row.emplace_back(c.recycle ? e.cost_per_success().mean : nan);
        row.emplace_back(c.recycle ? b.unconditional_cost().std_error : nan);
        row.emplace_back(d.success_std_error());
        row.emplace_back(d.conditional_cost().std_error);
        row.emplace_back(c.recycle ? e.cost_per_success().std_error : nan);
        row.emplace_back(d.unconditional_cost().mean);
        row.emplace_back(c.recycle ? e.conditional_cost().mean : nan);
        if (4 * d.conditional_cost().std_error > 1.0 || 4 * d.success_std_error() > 0.002) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "m=%d: insufficient precision (d std error %.3f, c std error %.4f)", m,
                          d.conditional_cost().std_error, d.success_std_error());
            t.warnings.emplace_back(buf);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table compute_table2(const RunConfig &c) {
    Table t;
    t.name = "table2";
    add_common_meta(t, c);
    t.meta.emplace_back("recycle", c.recycle ? "true" : "false");
    t.columns = {"n", "success", "cost_no_recycle", "cost_recycle", "success_se", "cost_no_recycle_se",
                 "cost_recycle_se", "success_recycle", "cost_no_recycle_unconditional", "cost_recycle_unconditional"};
    StrategySpec plain = apply_overrides(StrategySpec{}, c.overrides);
    StrategySpec recycling = plain;
    recycling.recycle = true;
    const double nan = std::nan("");
    for (int n = c.row_lo; n <= c.row_hi; n++) {
        SummaryStats a = mc_cnot(n, plain, options_for(c, 4, n));
        SummaryStats r;
        if (c.recycle) {
            r = mc_cnot(n, recycling, options_for(c, 5, n));
        }
        std::vector<Cell> row;
        row.emplace_back(int64_t{n});
        row.emplace_back(a.success_rate());
        row.emplace_back(a.conditional_cost().mean);
        row.emplace_back(c.recycle ? r.conditional_cost().mean : nan);
        row.emplace_back(a.success_std_error());
        row.emplace_back(a.conditional_cost().std_error);
        row.emplace_back(c.recycle ? r.conditional_cost().std_error : nan);
        row.emplace_back(c.recycle ? r.success_rate() : nan);
        row.emplace_back(a.unconditional_cost().mean);
        row.emplace_back(c.recycle ? r.unconditional_cost().mean : nan);
        double rel = a.conditional_cost().std_error / a.conditional_cost().mean;
        if (4 * a.success_std_error() > 0.005 || 4 * rel > 0.1 || std::isnan(rel)) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "n=%d: insufficient precision (success std error %.4f, cost std error %.2f)",
                          n, a.success_std_error(), a.conditional_cost().std_error);
            t.warnings.emplace_back(buf);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table compute_strategy_search(const RunConfig &c) {
    Table t;
    t.name = "strategy-search";
    add_common_meta(t, c);
    t.meta.emplace_back("recycle", c.recycle ? "true" : "false");
    t.columns = {"m", "cost", "exact", "depth", "plan", "candidates"};
    for (int m = c.row_lo; m <= c.row_hi; m++) {
        std::vector<StrategySpec> space = default_candidate_space(m);
        if (!c.recycle) {
            std::erase_if(space, [](const StrategySpec &s) {
                return s.recycle;
            });
        }
        RunOptions budget;
        budget.trials = c.trials;
        budget.seed = column_seed(c.seed, 6, m);
        budget.threads = c.threads;
        SearchResult r = strategy_search(m, space, budget);
        const auto &plan = r.strategy.build_plan;
        t.rows.push_back({int64_t{m}, r.cost, std::string(r.exact ? "true" : "false"),
                          int64_t{plan ? plan->depth() : dp_min_cost(m).tree.depth()},
                          plan ? plan->str() : std::string("planner"), static_cast<int64_t>(r.candidates_evaluated)});
    }
    return t;
}

std::string render(const Table &t, const std::string &format) {
    std::ostringstream os;
    if (format == "csv") {
        os << "# " << meta_line(t) << "\n";
        for (size_t i = 0; i < t.columns.size(); i++) {
            os << (i ? "," : "") << t.columns[i];
        }
        os << "\n";
        for (const auto &row : t.rows) {
            for (size_t i = 0; i < row.size(); i++) {
                os << (i ? "," : "") << format_cell(row[i]);
            }
            os << "\n";
        }
    } else if (format == "json") {
        nlohmann::ordered_json j;
        j["command"] = t.name;
        nlohmann::ordered_json meta = nlohmann::ordered_json::object();
        for (const auto &[k, v] : t.meta) {
            meta[k] = v;
        }
        j["meta"] = meta;
        j["columns"] = t.columns;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto &row : t.rows) {
            nlohmann::ordered_json r = nlohmann::ordered_json::object();
            for (size_t i = 0; i < row.size(); i++) {
                std::visit(
                    [&](const auto &v) {
                        using V = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<V, double>) {
                            r[t.columns[i]] = std::isnan(v) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v);
                        } else {
                            r[t.columns[i]] = v;
                        }
                    },
                    row[i]);
            }
            rows.push_back(r);
        }
        j["rows"] = rows;
        os << j.dump(2) << "\n";
    } else if (format == "markdown") {
        os << "<!-- " << meta_line(t) << " -->\n\n|";
        for (const auto &c : t.columns) {
            os << " " << c << " |";
        }
        os << "\n|";
        for (size_t i = 0; i < t.columns.size(); i++) {
            os << "---|";
        }
        os << "\n";
        for (const auto &row : t.rows) {
            os << "|";
            for (const auto &cell : row) {
                os << " " << format_cell(cell) << " |";
            }
            os << "\n";
        }
    } else {
        throw std::invalid_argument("unknown format " + format);
    }
    return os.str();
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Resource and success-rate simulator for fusion-based parity-code gates"};
    app.require_subcommand(1, 1);

    RunConfig cfg;
    std::string rows;
    std::string recycle = "true";
    const std::vector<std::string> formats{"csv", "json", "markdown"};

    auto add_run_flags = [&](CLI::App *sub, bool with_rows) {
        sub->add_option("--trials", cfg.trials, "Monte-Carlo trials per cell")->check(CLI::Range(int64_t{1}, int64_t{1} << 40));
        sub->add_option("--seed", cfg.seed, "Base seed");
        sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
        if (with_rows) {
            sub->add_option("--rows", rows, "Row range A..B");
            sub->add_option("--format", cfg.format, "csv, json or markdown")->check(CLI::IsMember(formats));
            sub->add_option("--out", cfg.out, "Output file");
            sub->add_option("--recycle", recycle, "Compute recycling columns (true|false)")
                ->check(CLI::IsMember({"true", "false"}));
            sub->add_option("--set", cfg.overrides, "Strategy override key=value (repeatable)");
        }
    };

    auto *t1 = app.add_subcommand("table1", "Resource construction and Z90 statistics");
    add_run_flags(t1, true);
    auto *t2 = app.add_subcommand("table2", "CNOT statistics");
    add_run_flags(t2, true);
    auto *ss = app.add_subcommand("strategy-search", "Cheapest build plan per resource size");
    add_run_flags(ss, true);
    auto *vf = app.add_subcommand("verify", "Run verification suites against the state-vector oracle");
    add_run_flags(vf, false);
    vf->add_option("suites", cfg.suites, "povm, transitions, gates, dp, formulas")
        ->check(CLI::IsMember({"povm", "transitions", "gates", "dp", "formulas"}));
    vf->add_option("--max-level", cfg.max_level, "Largest logical level for transitions")->check(CLI::Range(1, 5));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadArguments;
    }

    auto *sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    cfg.recycle = recycle == "true";
    try {
        if (cfg.command == "verify") {
            return run_verify(cfg, out, err);
        }
        if (cfg.trials == 0) {
            cfg.trials = cfg.command == "table1" ? 500000 : cfg.command == "table2" ? 100000 : 20000;
        }
        std::pair<int, int> range = cfg.command == "table2" ? std::pair{6, 10} : std::pair{3, 10};
        if (!rows.empty()) {
            range = parse_rows(rows);
        }
        cfg.row_lo = range.first;
        cfg.row_hi = range.second;
        int lo_limit = cfg.command == "table2" ? 1 : 2;
        int hi_limit = cfg.command == "table1" ? 15 : cfg.command == "strategy-search" ? 14 : 40;
        if (cfg.row_lo < lo_limit || cfg.row_hi > hi_limit) {
            err << "error: rows must lie in " << lo_limit << ".." << hi_limit << "\n";
            return kBadArguments;
        }
        apply_overrides(StrategySpec{}, cfg.overrides);
        Table t = cfg.command == "table1"   ? compute_table1(cfg)
                  : cfg.command == "table2" ? compute_table2(cfg)
                                            : compute_strategy_search(cfg);
        return emit(t, cfg, out, err);
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    } catch (const SimError &e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    }
}

}  // namespace paritysim::cli
