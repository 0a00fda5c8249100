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


// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli_commands.h"
#include "paritysim/fusion_kernel.h"
#include "paritysim/strategy_engine.h"
#include "paritysim/verification.h"

using namespace paritysim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool passed = true;
    std::vector<std::string> notes;

    void note(bool ok, const char *fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Outcome::note(bool ok, const char *fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    notes.push_back(std::string(ok ? "  ok   " : "  MISS ") + buf);
    passed = passed && ok;
}

int failures = 0;

void criterion(int id, const char *title, double limit_seconds, const std::function<Outcome()> &body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = body();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = limit_seconds <= 0 || secs < limit_seconds;
    if (!in_time) {
        o.note(false, "runtime %.2f s exceeds %.0f s", secs, limit_seconds);
    }
    std::printf("%s %d %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", id, title, secs);
    for (const auto &n : o.notes) {
        std::printf("%s\n", n.c_str());
    }
    std::fflush(stdout);
    failures += !o.passed;
}

double column(const cli::Table &t, size_t row, const std::string &name) {
    auto it = std::find(t.columns.begin(), t.columns.end(), name);
    return std::get<double>(t.rows[row][static_cast<size_t>(it - t.columns.begin())]);
}

int64_t int_column(const cli::Table &t, size_t row) {
    return std::get<int64_t>(t.rows[row][0]);
}

const cli::Table &table1() {
    static const cli::Table t = [] {
        cli::RunConfig c;
        c.command = "table1";
        c.trials = 500000;
        c.seed = 1;
        c.row_lo = 3;
        c.row_hi = 10;
        c.threads = 0;
        return cli::compute_table1(c);
    }();
    return t;
}

bool check_report(const CheckReport &r, Outcome &o) {
    for (const auto &c : r.checks) {
        if (c.detail.empty()) {
            o.note(c.passed, "%s/%s: %lld cases, worst %.3g", c.suite.c_str(), c.name.c_str(),
                   static_cast<long long>(c.cases), c.worst);
        } else {
            o.note(c.passed, "%s/%s: %s", c.suite.c_str(), c.name.c_str(), c.detail.c_str());
        }
    }
    return r.all_passed();
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_table1(const fs::path &out, const char *threads) {
    std::string o = out.string();
    const char *argv[] = {"paritysim", "table1", "--trials", "20000", "--seed", "7", "--threads", threads, "--out", o.c_str()};
    std::ostringstream sink;
    return cli::run(static_cast<int>(std::size(argv)), argv, sink, sink);
}

}  // namespace

int main() {
    criterion(1, "exact DP costs for m = 3..10", 1.0, [] {
        Outcome o;
        const double expected[] = {4, 10, 16, 28, 40, 52, 64, 88};
        for (int m = 3; m <= 10; m++) {
            double c = dp_min_cost(m).cost;
            o.note(c == expected[m - 3], "m=%d cost %.0f expected %.0f", m, c, expected[m - 3]);
        }
        return o;
    });

    criterion(2, "fusion POVM completeness", 1.0, [] {
        Outcome o;
        double d1 = completeness_deviation(fI_elements());
        double d2 = completeness_deviation(fII_elements());
        o.note(d1 < 1e-12, "fI max deviation %.3g", d1);
        o.note(d2 < 1e-12, "fII max deviation %.3g", d2);
        return o;
    });

    criterion(3, "symbolic transitions match the state-vector oracle (levels <= 4, 1e-10)", 120.0, [] {
        Outcome o;
        check_report(verify_transitions(4, 1e-10), o);
        return o;
    });

    criterion(4, "CNOT truth table and Z90 phase equivalence (20 random states)", 60.0, [] {
        Outcome o;
        check_report(verify_gates(20, 2026, 1e-10), o);
        return o;
    });

    criterion(5, "Z90 one-shot success rate, n = 3..10, 500000 trials", 0, [] {
        Outcome o;
        const double paper[] = {0.8748, 0.9376, 0.9696, 0.9847, 0.9920, 0.9958, 0.9980, 0.9989};
        const auto &t = table1();
        for (size_t i = 0; i < t.rows.size(); i++) {
            double mc = column(t, i, "c_mc");
            double se = column(t, i, "c_se");
            double exact = column(t, i, "c_analytic");
            bool ok = std::abs(mc - exact) <= 4 * se && std::abs(mc - paper[i]) <= 0.002;
            o.note(ok, "n=%lld mc %.4f%% (se %.4f) analytic %.4f%% table %.2f%%", static_cast<long long>(int_column(t, i)),
                   100 * mc, 100 * se, 100 * exact, 100 * paper[i]);
        }
        return o;
    });

    criterion(6, "Z90 one-shot conditional cost, n = 3..10", 0, [] {
        Outcome o;
        const double paper[] = {16, 28, 51, 76, 101, 126, 174, 222};
        const auto &t = table1();
        for (size_t i = 0; i < t.rows.size(); i++) {
            double mc = column(t, i, "d_mc");
            double se = column(t, i, "d_se");
            double exact = column(t, i, "d_analytic");
            double tol = std::max(1.0, 4 * se);
            bool ok = std::abs(mc - exact) <= 4 * se && std::abs(mc - paper[i]) <= tol;
            o.note(ok, "n=%lld mc %.3f (se %.3f) closed form %.3f table %.0f tolerance %.3f",
                   static_cast<long long>(int_column(t, i)), mc, se, exact, paper[i], tol);
        }
        return o;
    });

    criterion(7, "recycling columns: build cost within 10%, Z90 cost within 15%", 0, [] {
        Outcome o;
        const double paper_b[] = {4, 10, 16, 28, 38, 44, 57, 66};
        const double paper_e[] = {19, 25, 45, 53, 63, 78, 90, 100};
        const auto &t = table1();
        for (size_t i = 0; i < t.rows.size(); i++) {
            double b = column(t, i, "b_mc");
            double e = column(t, i, "e_mc");
            double rb = b / paper_b[i] - 1;
            double re = e / paper_e[i] - 1;
            long long m = static_cast<long long>(int_column(t, i));
            o.note(std::abs(rb) <= 0.10, "m=%lld build %.3f table %.0f (%+.1f%%)", m, b, paper_b[i], 100 * rb);
            o.note(std::abs(re) <= 0.15, "n=%lld Z90 %.3f table %.0f (%+.1f%%)", m, e, paper_e[i], 100 * re);
        }
        return o;
    });

    criterion(8, "CNOT table, n = 6..10, 100000 trials", 300.0, [] {
        Outcome o;
        cli::RunConfig c;
        c.command = "table2";
        c.trials = 100000;
        c.seed = 1;
        c.row_lo = 6;
        c.row_hi = 10;
        c.threads = 0;
        cli::Table t = cli::compute_table2(c);
        const double success[] = {0.964, 0.976, 0.982, 0.986, 0.989};
        const double plain[] = {181, 190, 196, 208, 228};
        const double recycled[] = {115, 117, 121, 126, 151};
        for (size_t i = 0; i < t.rows.size(); i++) {
            long long n = static_cast<long long>(int_column(t, i));
            double s = column(t, i, "success");
            double a = column(t, i, "cost_no_recycle");
            double b = column(t, i, "cost_recycle");
            o.note(std::abs(s - success[i]) <= 0.005, "n=%lld success %.2f%% table %.1f%% (%+.2f pp)", n, 100 * s,
                   100 * success[i], 100 * (s - success[i]));
            o.note(std::abs(a / plain[i] - 1) <= 0.10, "n=%lld cost %.1f table %.0f (%+.1f%%)", n, a, plain[i],
                   100 * (a / plain[i] - 1));
            o.note(std::abs(b / recycled[i] - 1) <= 0.10, "n=%lld recycled cost %.1f table %.0f (%+.1f%%)", n, b,
                   recycled[i], 100 * (b / recycled[i] - 1));
        }
        return o;
    });

    criterion(9, "table1 output is byte-identical across runs and thread counts", 0, [] {
        Outcome o;
        fs::path dir = fs::temp_directory_path() / "paritysim_acceptance";
        fs::remove_all(dir);
        fs::create_directories(dir);
        int c1 = run_table1(dir / "run1.csv", "1");
        int c2 = run_table1(dir / "run2.csv", "1");
        int c3 = run_table1(dir / "run3.csv", "4");
        o.note(c1 == 0 && c2 == 0 && c3 == 0, "exit codes %d %d %d", c1, c2, c3);
        std::string a = slurp(dir / "run1.csv");
        o.note(!a.empty() && a == slurp(dir / "run2.csv"), "same seed, same threads: %zu bytes", a.size());
        o.note(!a.empty() && a == slurp(dir / "run3.csv"), "1 thread vs 4 threads");
        fs::remove_all(dir);
        return o;
    });

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
