#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef PRIMERACE_CLI
#error "PRIMERACE_CLI must name the CLI binary"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(PRIMERACE_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "primerace_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Cli, CountsFirstMillionMod3) {
    const auto r = run("count --q 3 --nth-prime 1e6");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "pattern,count\n\"(1,1)\",215873\n\"(1,2)\",283957\n\"(2,1)\",283957\n\"(2,2)\",216213\n");
}

TEST(Cli, JsonFormat) {
    const auto r = run("count --q 3 --x 100 --format json");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("\"pattern\": \"(1,1)\""), std::string::npos);
    EXPECT_NE(r.out.find("\"count\": 3"), std::string::npos);
}

TEST(Cli, InvalidArguments) {
    EXPECT_EQ(run("count --q 2 --x 1000").status, 2);
    EXPECT_EQ(run("count --q 3").status, 2);
    EXPECT_EQ(run("count --q 3 --x 100 --nth-prime 100").status, 2);
    EXPECT_EQ(run("count --q 3 --x banana").status, 2);
    EXPECT_EQ(run("predict --q 4 --x 1e9 --method integral --r 3").status, 2);
    EXPECT_EQ(run("constants --q 6 --r 2").status, 0);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("count --q 3 --x 100 --format xml").status, 2);
}

TEST(Cli, ResourceLimits) {
    EXPECT_EQ(run("count --q 3 --x 1e14").status, 4);
    EXPECT_EQ(run("count --q 1009 --r 3 --x 1000").status, 4);
}

TEST(Cli, ConfigFileAndPrecedence) {
    const auto cfg = scratch("count.cfg");
    std::ofstream(cfg) << "# mod 3 pair counts\nq = 5\nx = 100\n";
    const auto from_file = run("count --config " + cfg.string());
    ASSERT_EQ(from_file.status, 0);
    EXPECT_EQ(from_file.out, run("count --q 5 --x 100").out);
    const auto overridden = run("count --config " + cfg.string() + " --q 3");
    EXPECT_EQ(overridden.out, run("count --q 3 --x 100").out);
    EXPECT_EQ(run("count --config " + scratch("missing.cfg").string()).status, 2);
}

TEST(Cli, OutputFileAndManifest) {
    const auto path = scratch("counts.csv");
    fs::remove(path);
    fs::remove(path.string() + ".manifest");
    const auto r = run("count --q 4 --x 1e5 -o " + path.string());
    ASSERT_EQ(r.status, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(slurp(path), run("count --q 4 --x 1e5").out);
    const auto manifest = slurp(path.string() + ".manifest");
    for (const char* key : {"command=", "version=", "q=4", "limit=100000", "start_rule=after-q", "windows=",
                            "wall_time_s="})
        EXPECT_NE(manifest.find(key), std::string::npos) << key;
}

TEST(Cli, RepeatableOutput) {
    for (const char* args : {"constants --q 12", "dump-lvalues --q 12 --m 3", "constants dump-characters --q 7"}) {
        const auto a = run(args);
        ASSERT_EQ(a.status, 0) << args;
        EXPECT_FALSE(a.out.empty());
        EXPECT_EQ(a.out, run(args).out) << args;
    }
    for (const char* args : {"predict --q 5 --x 1e9 --method integral", "predict --q 5 --x 1e12 --r 3",
                             "s0 --q 4 --v 2 --H 300", "count --q 10 --x 1e6"}) {
        const auto a = run(args);
        ASSERT_EQ(a.status, 0) << args;
        EXPECT_FALSE(a.out.empty());
        EXPECT_EQ(a.out, run(std::string(args) + " --threads 3").out) << args;
    }
}

TEST(Cli, PredictMatchesLibraryNumbers) {
    const auto r = run("predict --q 12 --x 1e9 --method integral");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("\"(1,1)\",2364"), std::string::npos) << r.out;
}

TEST(Cli, Help) {
    const auto r = run("--help");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
}
