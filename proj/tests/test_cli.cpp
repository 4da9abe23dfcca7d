// Copyright 2026 The qgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "qgate/cli.hpp"

namespace {

namespace fs = std::filesystem;
using qgate::pi;
using Json = qgate::io::Json;

struct Output {
    int code;
    std::string out;
    std::string err;
};

Output run(std::vector<std::string> args) {
    args.insert(args.begin(), "qgate");
    std::ostringstream out, err;
    const int code = qgate::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

double num(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

TEST(Cli, OptimalProbabilities) {
    const auto r = run({"probs", "--single", "--alpha", "1.5707963267948966", "--beta", "1.5707963267948966",
                        "--phi", "0", "--omega", "0", "--grid", "181"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 182u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "P0", "P1"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double t = num(rows[i][0]);
        ASSERT_NEAR(num(rows[i][1]), (1 - std::cos(t)) / 2, 1e-12);
    }
}

TEST(Cli, BellProbabilities) {
    const auto r = run({"probs", "--bell", "--c", "1,0,0,0", "--grid", "19"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "P0", "P1", "P2", "P3"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double t = num(rows[i][0]);
        ASSERT_NEAR(num(rows[i][1]), std::cos(t / 2) * std::cos(t / 2), 1e-15);
    }
}

TEST(Cli, ProbabilitiesRoundTrip) {
    const auto r = run({"probs", "--alpha", "1.2", "--beta", "0.9", "--phi", "0.3", "--omega", "0.1", "--grid", "50"});
    ASSERT_EQ(r.code, 0) << r.err;
    const qgate::SingleQubitModel m(1.2, 0.9, 0.3, 0.1);
    const auto rows = parse_csv(r.out);
    const auto grid = qgate::angle_grid(50);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_EQ(num(rows[i][0]), grid[i - 1]);
        ASSERT_EQ(num(rows[i][1]), m.probability(0, grid[i - 1]));
        ASSERT_EQ(num(rows[i][2]), m.probability(1, grid[i - 1]));
    }
}

TEST(Cli, DegreesConvertAtTheBoundary) {
    const auto a = run({"probs", "--alpha", "90", "--beta", "60", "--phi", "45", "--degrees", "--grid", "7"});
    const auto b = run({"probs", "--alpha", "1.5707963267948966", "--beta", "1.0471975511965976", "--phi",
                        "0.78539816339744828", "--grid", "7"});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto ra = parse_csv(a.out), rb = parse_csv(b.out);
    for (std::size_t i = 1; i < ra.size(); ++i) ASSERT_NEAR(num(ra[i][1]), num(rb[i][1]), 1e-12);
}

TEST(Cli, FisherBellConstantColumn) {
    const auto r = run({"fisher", "--bell", "--c", "0,0.6,0,0.8", "--grid", "181"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "G"}));
    for (std::size_t i = 1; i < rows.size(); ++i) ASSERT_NEAR(num(rows[i][1]), 1.0, 1e-12);
}

TEST(Cli, FisherBoundColumns) {
    const auto r = run({"fisher", "--theta", "0.8", "--alpha", "1.2", "--beta", "0.9", "--numeric", "--M", "50"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "G", "G_numeric", "F", "M", "H_M", "cr_bound",
                                                 "van_trees_bound"}));
    ASSERT_EQ(rows.size(), 2u);
    const auto rep = qgate::bound_report(qgate::Model(qgate::SingleQubitModel(1.2, 0.9, 0, 0)),
                                         qgate::GateParam(0.8), 50, qgate::Prior::uniform());
    EXPECT_EQ(num(rows[1][1]), rep.G.value());
    EXPECT_NEAR(num(rows[1][2]), rep.G.value(), 1e-6);
    EXPECT_EQ(rows[1][4], "50");
    EXPECT_EQ(num(rows[1][6]), rep.cr_bound.value());
    EXPECT_EQ(num(rows[1][7]), rep.van_trees_bound.value());
}

TEST(Cli, FisherSentinelsInJson) {
    const auto r = run({"fisher", "--theta", "0", "--M", "10", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j["rows"][0]["G"], "indeterminate");
    const auto z = Json::parse(run({"fisher", "--alpha", "0", "--beta", "1", "--theta", "1", "--M", "10",
                                    "--format", "json"}).out);
    EXPECT_EQ(z["rows"][0]["bound_report"]["cr_bound"], "inf");
    EXPECT_EQ(z["rows"][0]["bound_report"]["van_trees_bound"], "inf");
}

TEST(Cli, ScanPeaksAtOptimum) {
    const auto r = run({"scan", "--theta-star-list", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"theta_star", "alpha", "beta", "G"}));
    ASSERT_EQ(rows.size(), 1u + 101 * 101);
    double best = -1, ba = 0, bb = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][3] == "indeterminate") continue;
        if (num(rows[i][3]) > best) {
            best = num(rows[i][3]);
            ba = num(rows[i][1]);
            bb = num(rows[i][2]);
        }
    }
    EXPECT_NEAR(best, 1.0, 1e-12);
    EXPECT_NEAR(ba, pi / 2, 1e-12);
    EXPECT_NEAR(bb, pi / 2, 1e-12);
}

TEST(Cli, AsymptoticMatchesQuadrature) {
    const auto r = run({"asymptotic", "--theta-star", "0.8", "--M", "100", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    for (const char* k : {"grid", "density", "log_density", "mean", "variance", "argmax", "theta_star", "M",
                          "bound_report", "generalized_fisher"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_NEAR(j["variance"].get<double>() / 0.009854911779792642282, 1.0, 1e-6);
    EXPECT_EQ(j["log_density"][0], "-inf");
}

TEST(Cli, PosteriorCsvAndJson) {
    const auto r = run({"posterior", "--counts", "5,15"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "density", "log_density"}));
    EXPECT_EQ(rows.size(), 4097u);
    const auto j = Json::parse(run({"posterior", "--counts", "5,15", "--format", "json"}).out);
    EXPECT_NEAR(j["mean"].get<double>(), 1.0617114180818848716, 1e-6);
    EXPECT_EQ(j["M"], 20);
    EXPECT_TRUE(j["bound_report"].is_object());
    const auto e = Json::parse(run({"posterior", "--counts", "0,0", "--format", "json"}).out);
    EXPECT_TRUE(e["bound_report"].is_null());
}

TEST(Cli, McColumnsAndSummary) {
    const auto r = run({"mc", "--theta-star", "0.6", "--M", "50", "--replicates", "5", "--seed", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"replicate", "m0", "m1", "posterior_mean", "posterior_variance",
                                                 "rescaled_variance", "mean_ratio", "bias", "boundary_degenerate"}));
    EXPECT_EQ(rows.size(), 6u);
    const auto j = Json::parse(
        run({"mc", "--theta-star", "0.6", "--M", "50", "--replicates", "5", "--seed", "1", "--format", "json"}).out);
    for (const char* k : {"model", "theta_star", "M", "replicates", "seed", "grid_size", "results", "summary"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["results"].size(), 5u);
    EXPECT_EQ(j["results"][2]["posterior_mean"].get<double>(), num(rows[3][3]));
}

TEST(Cli, McIsDeterministic) {
    const std::vector<std::string> args{"mc", "--theta-star", "0.6", "--M", "500", "--replicates", "50", "--seed", "7"};
    const auto a = run(args);
    auto with_threads = args;
    with_threads.insert(with_threads.end(), {"--threads", "3"});
    const auto b = run(with_threads);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, run(args).out);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SweepRows) {
    const auto r = run({"sweep", "--theta-star", "0.6", "--M-list", "20,50,100", "--replicates", "20"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"M", "mean_ratio", "rescaled_variance"}));
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[3][0], "100");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"probs", "--help"}).code, 0);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"probs", "--bogus"}).code, 2);
    EXPECT_EQ(run({"probs", "--alpha", "4"}).code, 2);
    EXPECT_EQ(run({"probs", "--bell", "--c", "1,1,0,0"}).code, 2);
    EXPECT_EQ(run({"probs", "--bell", "--c", "1,1,0,0", "--normalize-c"}).code, 0);
    EXPECT_EQ(run({"probs", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"sweep", "--theta-star", "0.6", "--M-list", "50,20"}).code, 2);
    EXPECT_EQ(run({"mc", "--theta-star", "0.6", "--M", "0"}).code, 2);
    const auto n = run({"posterior", "--alpha", "0", "--beta", "0", "--counts", "1,3"});
    EXPECT_EQ(n.code, 3);
    EXPECT_NE(n.err.find("numeric"), std::string::npos);
    EXPECT_TRUE(n.out.empty());
}

TEST(Cli, OutputDirectoryFromEnvironment) {
    const fs::path dir = fs::temp_directory_path() / "qgate_cli_test";
    fs::create_directories(dir);
    fs::remove(dir / "p.csv");
    ::setenv(qgate::cli::output_dir_env, dir.c_str(), 1);
    const auto r = run({"probs", "--grid", "3", "--output", "p.csv"});
    ::unsetenv(qgate::cli::output_dir_env);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(slurp(dir / "p.csv"), run({"probs", "--grid", "3"}).out);

    const fs::path abs = dir / "abs.csv";
    ASSERT_EQ(run({"probs", "--grid", "3", "-o", abs.string()}).code, 0);
    EXPECT_TRUE(fs::exists(abs));
    fs::remove_all(dir);
}

TEST(Cli, GoldenFiles) {
    const fs::path golden(QGATE_GOLDEN_DIR);
    EXPECT_EQ(run({"probs", "--grid", "5"}).out, slurp(golden / "probs_optimal.csv"));
    EXPECT_EQ(run({"fisher", "--bell", "--c", "0.6,0.48,0.36,0.53", "--normalize-c", "--grid", "4", "--M", "10"}).out,
              slurp(golden / "fisher_bell.csv"));
    EXPECT_EQ(run({"fisher", "--theta", "1", "--M", "100", "--format", "json"}).out,
              slurp(golden / "fisher_optimal.json"));
}

} // namespace
