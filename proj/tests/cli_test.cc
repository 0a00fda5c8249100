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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using namespace paritysim;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::initializer_list<std::string> args) {
    std::vector<std::string> store{"paritysim"};
    store.insert(store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &s : store) {
        argv.push_back(s.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("paritysim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }
    fs::path dir_;
};

std::vector<std::string> lines(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

}  // namespace

TEST(parse_rows, forms) {
    EXPECT_EQ(cli::parse_rows("3..10"), std::make_pair(3, 10));
    EXPECT_EQ(cli::parse_rows("7"), std::make_pair(7, 7));
    EXPECT_THROW(cli::parse_rows("10..3"), std::invalid_argument);
    EXPECT_THROW(cli::parse_rows("a..b"), std::invalid_argument);
}

TEST(apply_overrides, keys) {
    auto s = cli::apply_overrides({}, {"gate_resource=6", "pre_encode_threshold=4"});
    EXPECT_EQ(s.cnot.gate_resource, 6);
    EXPECT_EQ(s.cnot.pre_encode_threshold, 4);
    EXPECT_THROW(cli::apply_overrides({}, {"nonsense=1"}), std::invalid_argument);
    EXPECT_THROW(cli::apply_overrides({}, {"gate_resource"}), std::invalid_argument);
}

TEST_F(CliTest, table1_csv_schema) {
    auto r = run_cli({"table1", "--trials", "2000", "--rows", "3..4", "--out", path("t1.csv")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto ls = lines(slurp(path("t1.csv")));
    ASSERT_EQ(ls.size(), 4u);
    EXPECT_EQ(ls[0].rfind("# table1 ", 0), 0u);
    EXPECT_EQ(ls[1].rfind("m,a_dp,b_mc,c_analytic,c_mc,d_analytic,d_mc,e_mc", 0), 0u);
    EXPECT_EQ(ls[2].rfind("3,4.000000,", 0), 0u);
    EXPECT_EQ(ls[3].rfind("4,10.000000,", 0), 0u);
}

TEST_F(CliTest, table1_is_byte_identical_across_runs_and_threads) {
    auto a = run_cli({"table1", "--trials", "3000", "--rows", "3..6", "--seed", "9", "--threads", "1", "--out", path("a.csv")});
    auto b = run_cli({"table1", "--trials", "3000", "--rows", "3..6", "--seed", "9", "--threads", "4", "--out", path("b.csv")});
    ASSERT_EQ(a.code, 0);
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    auto c = run_cli({"table1", "--trials", "3000", "--rows", "3..6", "--seed", "10", "--out", path("c.csv")});
    ASSERT_EQ(c.code, 0);
    EXPECT_NE(slurp(path("a.csv")), slurp(path("c.csv")));
}

TEST_F(CliTest, table2_json) {
    auto r = run_cli({"table2", "--trials", "500", "--rows", "6", "--format", "json", "--out", path("t2.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(slurp(path("t2.json")));
    EXPECT_EQ(j["rows"].size(), 1u);
    EXPECT_EQ(j["columns"][0], "n");
    EXPECT_EQ(j["columns"][1], "success");
}

TEST_F(CliTest, table2_without_recycling) {
    auto r = run_cli({"table2", "--trials", "300", "--rows", "6", "--recycle", "false", "--out", path("t2.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto ls = lines(slurp(path("t2.csv")));
    ASSERT_EQ(ls.size(), 3u);
    EXPECT_NE(ls[2].find("nan"), std::string::npos);
}

TEST_F(CliTest, markdown_output) {
    auto r = run_cli({"strategy-search", "--trials", "200", "--rows", "3..5", "--format", "markdown", "--out", path("s.md")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto ls = lines(slurp(path("s.md")));
    ASSERT_GE(ls.size(), 5u);
    EXPECT_EQ(ls[0].rfind("<!--", 0), 0u);
    EXPECT_EQ(ls[2].rfind("| m | cost", 0), 0u);
}

TEST_F(CliTest, missing_directory_is_io_error) {
    auto r = run_cli({"table1", "--trials", "10", "--rows", "3", "--out", path("nope/t.csv")});
    EXPECT_EQ(r.code, cli::kIoError);
}

TEST(cli, bad_arguments) {
    EXPECT_EQ(run_cli({"table1", "--format", "xml"}).code, cli::kBadArguments);
    EXPECT_EQ(run_cli({"table1", "--trials", "0"}).code, cli::kBadArguments);
    EXPECT_EQ(run_cli({"table1", "--rows", "1..4"}).code, cli::kBadArguments);
    EXPECT_EQ(run_cli({"verify", "bogus"}).code, cli::kBadArguments);
    EXPECT_EQ(run_cli({"verify", "--max-level", "9"}).code, cli::kBadArguments);
    EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kBadArguments);
}

TEST(cli, help_is_ok) {
    EXPECT_EQ(run_cli({"--help"}).code, cli::kOk);
}

TEST(cli, verify_passes) {
    auto r = run_cli({"verify", "povm", "dp", "formulas"});
    EXPECT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
