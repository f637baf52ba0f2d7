#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include "polyhelix/acceptance.hpp"
#include "polyhelix/report.hpp"

using namespace polyhelix;
using report::json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + std::string(POLYHELIX_CLI) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("polyhelix_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir / name;
}

json valid_json(const CliRun& r) {
    json j = json::parse(r.out);
    const auto errs = report::validate(j);
    for (const auto& e : errs) ADD_FAILURE() << e;
    return j;
}

} // namespace

TEST(Cli, TauMatchesGoldenText) {
    for (int r : {3, 4}) {
        const auto run = cli("tau --order " + std::to_string(r));
        EXPECT_EQ(run.code, 0);
        EXPECT_EQ(run.out, slurp(std::filesystem::path(POLYHELIX_GOLDEN_DIR) / ("tau_order" + std::to_string(r) + ".txt")));
    }
}

TEST(Cli, TauJsonAndLatex) {
    const auto j = valid_json(cli("tau --order 3 --json"));
    const auto& eqs = j["payload"]["equations"];
    ASSERT_EQ(eqs.size(), 2u);
    EXPECT_EQ(eqs[1]["factored"], "k1^2 + k2^2 + k3^2 + k4^2 - K");
    EXPECT_EQ(eqs[0]["gcd"], "k1");
    const auto tex = cli("tau --order 3 --format latex");
    EXPECT_NE(tex.out.find("\\begin{aligned}"), std::string::npos);
    EXPECT_NE(tex.out.find("k_{4}^{2} - K &= 0"), std::string::npos);
}

TEST(Cli, ByteIdenticalReports) {
    for (const std::string args : {"classify --order 3 --K 1 --zeros 3,4 --json", "conjecture --order 3 --beta-grid 0:4:5 --json",
                                   "verify --curve four-planar --json", "family tri-hyperbola --samples 8 --json"}) {
        const auto a = cli(args), b = cli(args);
        EXPECT_EQ(a.code, 0) << args;
        EXPECT_EQ(a.out, b.out) << args;
        EXPECT_FALSE(a.out.empty());
        (void)valid_json(a);
    }
}

TEST(Cli, ClassifyNegativeK) {
    const auto run = cli("classify --order 3 --K -1 --json");
    EXPECT_EQ(run.code, 0);
    const auto j = valid_json(run);
    EXPECT_EQ(j["payload"]["proper_count"], 0);
    ASSERT_FALSE(j["payload"]["infeasibility_certificates"].empty());
    EXPECT_TRUE(j["payload"]["infeasibility_certificates"][0]["identity_holds"].get<bool>());
}

TEST(Cli, VerifyExitCodes) {
    const auto ok = cli("verify --curve tri-planar");
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("PASS"), std::string::npos);
    EXPECT_EQ(cli("verify --curve tri-planar --tol 1e-300").code, 1);
    EXPECT_EQ(cli("verify --curve no-such-curve").code, 2);
    EXPECT_EQ(cli("verify --curve tri-hyperbola --params b2=2,a2=0.5").code, 2);
    const auto j = valid_json(cli("verify --curve biharmonic-two-freq --params a2=1.2 --json"));
    EXPECT_TRUE(j["summary"]["pass"].get<bool>());
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("tau").code, 2);
    EXPECT_EQ(cli("tau --order 3 --bogus").code, 2);
    EXPECT_EQ(cli("tau --order 3 --format csv").code, 2);
    EXPECT_EQ(cli("integrate --profile k1=1/s --span 0:1 --step 1e-2").code, 2);
    EXPECT_EQ(cli("classify --order 3 --K 1 --zeros 1").code, 2);
    EXPECT_EQ(cli("tau --order 3 --help").code, 0);
}

TEST(Cli, SeedSources) {
    auto seed_of = [](const CliRun& r) { return json::parse(r.out)["seed"].get<std::uint64_t>(); };
    EXPECT_EQ(seed_of(cli("classify --order 2 --K 1 --json")), 42u);
    EXPECT_EQ(seed_of(cli("classify --order 2 --K 1 --json", "POLYHELIX_SEED=7")), 7u);
    EXPECT_EQ(seed_of(cli("classify --order 2 --K 1 --json --seed 9", "POLYHELIX_SEED=7")), 9u);
    EXPECT_EQ(cli("classify --order 2 --K 1", "POLYHELIX_SEED=abc").code, 2);
}

TEST(Cli, TimingOnlyOnRequest) {
    EXPECT_EQ(cli("tau --order 2 --json").out.find("wall_time"), std::string::npos);
    EXPECT_NE(cli("tau --order 2 --json --timing").out.find("wall_time_s"), std::string::npos);
}

TEST(Cli, IntegrateConservePipeline) {
    const auto csv = scratch("samples.csv");
    const auto run = cli("integrate --profile \"k1=1/s,k2=2/s\" --span 1:3 --step 1e-3 --out " + csv.string());
    ASSERT_EQ(run.code, 0);
    const std::string data = slurp(csv);
    EXPECT_EQ(data.rfind("s,x1,x2,x3\n", 0), 0u);
    const auto j = valid_json(cli("conserve --order 3 --in " + csv.string() + " --ambient flat --json"));
    EXPECT_TRUE(j["summary"]["pass"].get<bool>());
    EXPECT_LT(std::abs(j["payload"]["c1"].get<double>()), 1e-5);
    EXPECT_NE(cli("conserve --order 4 --in " + csv.string() + " --ambient flat").code, 2);
    EXPECT_EQ(cli("conserve --order 3 --in /nonexistent.csv").code, 2);
    const auto summary = valid_json(cli("integrate --profile \"k1=1,k2=0\" --span 0:1 --step 1e-2 --json --out " + scratch("c.csv").string()));
    EXPECT_EQ(summary["payload"]["samples"], 101);
    std::filesystem::remove_all(csv.parent_path());
}

TEST(Cli, ConjectureCsvColumns) {
    const auto run = cli("conjecture --order 3 --beta-grid 1:3:3 --csv");
    EXPECT_EQ(run.code, 0);
    EXPECT_EQ(run.out.rfind("beta,rho,fd_residual,exact_full,exact_tangential,law_residual\n", 0), 0u);
    EXPECT_EQ(std::count(run.out.begin(), run.out.end(), '\n'), 4);
}

TEST(Cli, FamilyCsvColumns) {
    const auto run = cli("family tri-hyperbola --samples 16 --csv");
    EXPECT_EQ(run.code, 0);
    EXPECT_EQ(run.out.rfind("y,x,alpha1sq,alpha3sq,tau3_residual,lambda\n", 0), 0u);
}

TEST(Cli, ReproduceSymbolicAndMutation) {
    const auto ok = cli("reproduce --only symbolic --json");
    EXPECT_EQ(ok.code, 0);
    const auto j = valid_json(ok);
    EXPECT_EQ(j["payload"]["total"], 3);
    EXPECT_EQ(j["payload"]["passed"], 3);
    EXPECT_EQ(cli("reproduce --only symbolic --mutate-frenet-sign").code, 1);
    EXPECT_EQ(cli("reproduce --only nonsense").code, 2);
}

TEST(Acceptance, MutatedRecursionFailsSymbolicCriteria) {
    acceptance::Options o;
    o.only = "symbolic";
    o.rule.raising_sign = -1;
    for (const auto& r : acceptance::run(o)) EXPECT_FALSE(r.pass) << r.id;
    o.rule = {};
    for (const auto& r : acceptance::run(o)) EXPECT_TRUE(r.pass) << r.id;
}

TEST(Schema, RejectsBrokenReports) {
    json good = report::envelope("tau", {"tau"}, 42, report::constraint_system(constraint_system(2)), std::nullopt);
    EXPECT_TRUE(report::validate(good).empty());
    json missing = good;
    missing["payload"].erase("equations");
    EXPECT_FALSE(report::validate(missing).empty());
    json wrong = good;
    wrong["payload"]["order"] = "three";
    EXPECT_FALSE(report::validate(wrong).empty());
    json unknown = good;
    unknown["command"] = "nope";
    EXPECT_FALSE(report::validate(unknown).empty());
    EXPECT_TRUE(report::validate(json::parse(good.dump())).empty());
}

TEST(Schema, NonFiniteBecomesNull) {
    EXPECT_TRUE(report::num(std::nan("")).is_null());
    EXPECT_EQ(report::num(1.5), json(1.5));
}
