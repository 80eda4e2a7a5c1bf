#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args) {
    static int counter = 0;
    fs::path file = fs::temp_directory_path() / ("eqcoh_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::string cmd = std::string(EQCOH_CLI) + " " + args + " > " + file.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    fs::remove(file);
    return r;
}

std::string data(const std::string& name) { return std::string(EQCOH_SAMPLE_DATA) + "/" + name; }

}  // namespace

TEST(Cli, VerifyPasses) {
    auto r = run("verify --model mutant-torus --r 1 --coeff Z");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("overall: pass"), std::string::npos);
}

TEST(Cli, JsonIsDeterministic) {
    auto a = run("verify --model example-3-3 --format json --jobs 1");
    auto b = run("verify --model example-3-3 --format json --jobs 3");
    ASSERT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    auto j = nlohmann::json::parse(a.out);
    EXPECT_EQ(j["overall"], "pass");
    EXPECT_EQ(j["facts"]["classification"], "torsion_free_not_free");
}

TEST(Cli, ErrorsExitWithTwo) {
    EXPECT_EQ(run("verify --model mutant-torus --r 3").code, 2);
    EXPECT_EQ(run("verify --model example-3-3 --max-degree 2").code, 2);
    EXPECT_EQ(run("verify --model mutant-torus --coeff R").code, 2);
    EXPECT_EQ(run("doubling --presentation /nonexistent.json").code, 2);
    EXPECT_EQ(run("report --intersection-form --r 8").code, 2);
    EXPECT_NE(run("verify --model nonsense").code, 0);
}

TEST(Cli, Reports) {
    auto p = run("report --poincare Z --r 2 --variant torus");
    EXPECT_EQ(p.code, 0) << p.out;
    EXPECT_NE(p.out.find("1 + 3q^3 + 3q^4 + q^7"), std::string::npos) << p.out;
    auto f = run("report --intersection-form --r 2 --format json");
    ASSERT_EQ(f.code, 0) << f.out;
    EXPECT_EQ(nlohmann::json::parse(f.out)["facts"]["hyperbolic_blocks"], "3");
    auto o = run("report --obstruction example-3-3");
    EXPECT_EQ(o.code, 0) << o.out;
    EXPECT_NE(o.out.find("dim H^1 = 3 > rk H^odd = 2"), std::string::npos);
}

TEST(Cli, DoublingWritesFile) {
    fs::path out = fs::temp_directory_path() / ("eqcoh_cli_doubling_" + std::to_string(::getpid()) + ".json");
    auto r = run("doubling --presentation " + data("residue_t1.json") + " --format json --out " + out.string());
    ASSERT_EQ(r.code, 0) << r.out;
    std::ifstream in(out);
    auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["facts"]["coker_classification"], "has_torsion");
    fs::remove(out);
}
