#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "maxatsp/cli.hpp"

using namespace maxatsp;
using namespace maxatsp::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "maxatsp_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

int shell(const std::string& args) {
    const int status = std::system((std::string(MAXATSP_CLI) + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST(Cli, SolveFig1WithVerify) {
    RunConfig cfg;
    cfg.command = Command::Solve;
    cfg.input = std::string(MAXATSP_TEST_DATA) + "/fig1.txt";
    cfg.verify = true;
    std::ostringstream out, err;
    EXPECT_EQ(run(cfg, out, err), kOk);
    const auto j = nlohmann::json::parse(out.str());
    EXPECT_EQ(j["opt"], 2);
    EXPECT_EQ(j["tour_weight"], 2);
    EXPECT_EQ(j["w_cmax"], 3);
    EXPECT_GE(j["ratio"].get<double>(), 0.75);
    EXPECT_TRUE(j["certified"].get<bool>());
    EXPECT_EQ(j["schema"], kReportSchema);
}

TEST(Cli, GenIsDeterministic) {
    RunConfig cfg;
    cfg.command = Command::Gen;
    cfg.n = 8;
    cfg.seed = 7;
    cfg.output = scratch("a.txt").string();
    std::ostringstream out, err;
    ASSERT_EQ(run(cfg, out, err), kOk);
    cfg.output = scratch("b.txt").string();
    ASSERT_EQ(run(cfg, out, err), kOk);
    EXPECT_EQ(slurp(scratch("a.txt")), slurp(scratch("b.txt")));
    EXPECT_EQ(load_instance(slurp(scratch("a.txt"))).weights(), random_instance(8, 100, 7).weights());
}

TEST(Cli, BenchWritesOneRowPerSeed) {
    RunConfig cfg;
    cfg.command = Command::Bench;
    cfg.n = 10;
    cfg.seeds = 100;
    cfg.threads = 4;
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# maxatsp bench schema", 0), 0U);
    std::getline(in, line);
    EXPECT_EQ(line, "seed,n,branch,ratio,certified,millis");
    int rows = 0, noncertified = 0;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        ASSERT_EQ(cells.size(), 6U) << line;
        EXPECT_EQ(cells[0], std::to_string(cfg.seed + static_cast<std::uint64_t>(rows)));
        EXPECT_GE(std::stod(cells[3]), 0.75) << line;
        noncertified += cells[4] == "false" ? 1 : 0;
        ++rows;
    }
    EXPECT_EQ(rows, 100);
    EXPECT_EQ(code, noncertified ? kNotCertified : kOk);
}

TEST(Cli, BenchSkipsVerifyAboveThirteen) {
    RunConfig cfg;
    cfg.command = Command::Bench;
    cfg.n = 14;
    cfg.seeds = 2;
    std::ostringstream out, err;
    run(cfg, out, err);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::getline(in, line);
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    ASSERT_GE(cells.size(), 4U);
    EXPECT_TRUE(cells[3].empty());
}

TEST(Cli, SuperstringPrintsTextAndStats) {
    const auto path = scratch("strings.txt");
    std::ofstream(path) << "abc\nbcd\ncde\n";
    RunConfig cfg;
    cfg.command = Command::Superstring;
    cfg.input = path.string();
    cfg.verify = true;
    std::ostringstream out, err;
    ASSERT_EQ(run(cfg, out, err), kOk);
    std::istringstream in(out.str());
    std::string text, stats;
    std::getline(in, text);
    std::getline(in, stats);
    EXPECT_EQ(text, "abcde");
    const auto j = nlohmann::json::parse(stats);
    EXPECT_TRUE(j["valid"].get<bool>());
    EXPECT_EQ(j["optimum_length"], 5);
}

TEST(Cli, VerifySuitePasses) {
    RunConfig cfg;
    cfg.command = Command::Verify;
    cfg.n = 7;
    cfg.seeds = 30;
    std::ostringstream out, err;
    EXPECT_EQ(run(cfg, out, err), kOk);
    const auto j = nlohmann::json::parse(out.str());
    EXPECT_TRUE(j["ok"].get<bool>());
    EXPECT_EQ(j["runs"], 30);
}

TEST(Cli, MissingFileIsAnIoError) {
    RunConfig cfg;
    cfg.command = Command::Solve;
    cfg.input = scratch("does-not-exist.txt").string();
    std::ostringstream out, err;
    EXPECT_EQ(run(cfg, out, err), kUsage);
    EXPECT_NE(err.str().find("cannot open"), std::string::npos);
}

TEST(Cli, MalformedInstanceIsAnIoError) {
    const auto path = scratch("bad.txt");
    std::ofstream(path) << "3\n0 1 2\n1 0\n";
    RunConfig cfg;
    cfg.command = Command::Solve;
    cfg.input = path.string();
    std::ostringstream out, err;
    EXPECT_EQ(run(cfg, out, err), kUsage);
}

TEST(Cli, ExecutableExitCodes) {
    EXPECT_EQ(shell(""), kUsage);
    EXPECT_EQ(shell("solve"), kUsage);
    EXPECT_EQ(shell("frobnicate"), kUsage);
    EXPECT_EQ(shell("gen --n 1"), kUsage);
    EXPECT_EQ(shell("gen --n 6 --seed 2"), kOk);
    EXPECT_EQ(shell("solve --input " + std::string(MAXATSP_TEST_DATA) + "/fig1.txt --verify"), kOk);
    EXPECT_EQ(shell("bench --verify --no-verify"), kUsage);
    EXPECT_EQ(shell("--help"), kOk);
}

TEST(Cli, DotOutput) {
    const auto path = scratch("g.dot");
    RunConfig cfg;
    cfg.command = Command::Solve;
    cfg.input = std::string(MAXATSP_TEST_DATA) + "/fig1.txt";
    cfg.dot = path.string();
    std::ostringstream out, err;
    run(cfg, out, err);
    EXPECT_EQ(slurp(path).rfind("digraph", 0), 0U);
}
