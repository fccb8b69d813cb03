/*
 * Copyright 2026 The pebble authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace pebble;

namespace {

const std::filesystem::path kData = PEBBLE_DATA_DIR;

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result
run(std::vector<std::string> args)
{
    args.insert(args.begin(), "pebble");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string
write_file(const std::string& name, const std::string& text)
{
    auto dir = std::filesystem::temp_directory_path() / ("pebble-cli-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
}

} // namespace

TEST(Cli, AnalyzeFigureOne)
{
    auto r = run({"analyze", (kData / "fig1.strat").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("loops={(2,0),(2,1),(3,2)}\n"), std::string::npos);
    EXPECT_NE(r.out.find("graph nodes=4 edges=12"), std::string::npos);
    EXPECT_NE(r.out.find("all_s=delayer"), std::string::npos);

    auto with_s0 = run({"analyze", (kData / "fig1.strat").string(), "--s0", "4"});
    ASSERT_EQ(with_s0.code, 0) << with_s0.err;
    EXPECT_NE(with_s0.out.find("loop (2,0) approach=2"), std::string::npos) << with_s0.out;
}

TEST(Cli, PlayFigureOne)
{
    auto answers = write_file("fig1.answers", "answers 2 1 0\n");
    auto r = run({"play", (kData / "fig1.strat").string(), answers});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("outcome=DelayerWins"), std::string::npos);
    EXPECT_NE(r.out.find("round 1 ask 0 answer 2"), std::string::npos) << r.out;
}

TEST(Cli, OrderCommand)
{
    auto a = write_file("a.tree", "-\n1\n");
    auto b = write_file("b.tree", "-\n2\n1\n");
    auto same = run({"order", a, a});
    ASSERT_EQ(same.code, 0) << same.err;
    EXPECT_EQ(same.out.substr(0, same.out.find('\n')), "Equal");
    auto lt = run({"order", b, a});
    EXPECT_EQ(lt.out.substr(0, lt.out.find('\n')), "Greater");
    auto gt = run({"order", write_file("c.tree", "-\n"), a});
    EXPECT_EQ(gt.out.substr(0, gt.out.find('\n')), "Less");
}

TEST(Cli, InputErrorsExitTwo)
{
    auto bad_claim = run({"verify", "no-such-claim"});
    EXPECT_EQ(bad_claim.code, 2);
    EXPECT_NE(bad_claim.err.find("error:"), std::string::npos);

    auto bad = write_file("bad.strat", "game simple\nn 1\ns 2\ninit 0\nmap 0 0 -> 9\n");
    auto r = run({"analyze", bad});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find(bad + ":5:12:"), std::string::npos) << r.err;

    auto missing = run({"analyze", "/nonexistent/x.strat"});
    EXPECT_EQ(missing.code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, G2SimRootRamify)
{
    auto r = run({"g2sim", "--n", "3", "--C", "2", "--strategy", "root-ramify"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("winner=ProverWins"), std::string::npos) << r.out;
}

TEST(Cli, VerifyIsByteIdenticalWithoutTiming)
{
    auto a = run({"verify", "theorem-main-n2", "--no-timing"});
    auto b = run({"verify", "theorem-main-n2", "--no-timing"});
    EXPECT_EQ(a.code, 1);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("claim=theorem-main-n2 space=2187 ", 0), 0u) << a.out;
    EXPECT_NE(a.out.find("seconds=0.000"), std::string::npos);

    auto c = run({"verify", "small-n", "--no-timing", "--threads", "2"});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(c.out, run({"verify", "small-n", "--no-timing"}).out.replace(c.out.find("threads=") + 8, 1, "2"));
}
