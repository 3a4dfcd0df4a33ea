#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string output;
};

Run run(const std::string& args) {
    const fs::path log = fs::temp_directory_path() / "smm_cli_test.log";
    const std::string cmd = std::string(SMM_CLI) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("smm_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

const std::string kSymmetric = std::string(PRESET_DIR) + "/symmetric.json";

}  // namespace

TEST_CASE("simulate is byte-reproducible and stamped") {
    const fs::path a = scratch("sim_a"), b = scratch("sim_b");
    REQUIRE(run("simulate --quiet --config " + kSymmetric + " --seed 42 --paths 200 --out " + a.string()).code == 0);
    REQUIRE(run("simulate --quiet --config " + kSymmetric + " --seed 42 --paths 200 --out " + b.string()).code == 0);
    const std::string ca = slurp(a / "paths.csv");
    CHECK(!ca.empty());
    CHECK(ca == slurp(b / "paths.csv"));
    CHECK(ca.rfind("# config_hash=", 0) == 0);
    CHECK(ca.find("master_seed=42") != std::string::npos);
    const std::string summary = slurp(a / "paths_summary.json");
    CHECK(summary.find("\"config_hash\"") != std::string::npos);
    CHECK(summary.find("\"master_seed\": 42") != std::string::npos);

    const fs::path c = scratch("sim_c");
    REQUIRE(run("simulate --quiet --config " + kSymmetric + " --seed 43 --paths 200 --out " + c.string()).code == 0);
    CHECK(slurp(c / "paths.csv") != ca);
}

TEST_CASE("solve-u needs solve-pi first") {
    const fs::path dir = scratch("dep");
    const Run r = run("solve-u --config " + kSymmetric + " --out " + dir.string());
    CHECK(r.code == 1);
    CHECK(r.output.find("run solve-pi first") != std::string::npos);
}

TEST_CASE("solve-pi, solve-u, policy and backtest") {
    const fs::path dir = scratch("chain");
    const std::string common = " --quiet --config " + kSymmetric + " --out " + dir.string();
    REQUIRE(run("solve-pi" + common).code == 0);
    for (const char* f : {"pi_core.csv", "pi_field.csv", "pi_report.json"}) CHECK(fs::exists(dir / f));
    CHECK(slurp(dir / "pi_report.json").find("\"residual\"") != std::string::npos);
    REQUIRE(run("solve-u" + common).code == 0);
    CHECK(fs::exists(dir / "u_core.csv"));
    REQUIRE(run("policy" + common).code == 0);
    const std::string policy = slurp(dir / "policy.csv");
    CHECK(policy.rfind("# config_hash=", 0) == 0);
    CHECK(policy.find("t,p,i,s,m_plus,m_minus,l_plus,l_minus") != std::string::npos);
    REQUIRE(run("backtest --paths 500" + common).code == 0);
    const std::string table = slurp(dir / "backtest.csv");
    for (const char* name : {"Optimal", "Hold", "AlwaysQuote", "AskOnly", "BidOnly", "Random"})
        CHECK(table.find(name) != std::string::npos);
}

TEST_CASE("risk aversion is refused") {
    const fs::path dir = scratch("eta");
    fs::create_directories(dir);
    const fs::path cfg = dir / "eta.json";
    std::ofstream(cfg) << R"({"grid": {"n_t": 20}, "flags": {"eta": 1.0}})";
    REQUIRE(run("solve-pi --quiet --config " + cfg.string() + " --out " + dir.string()).code == 0);
    const Run r = run("policy --config " + cfg.string() + " --out " + dir.string());
    CHECK(r.code != 0);
    CHECK(r.output.find("η>0 unsupported") != std::string::npos);
}

TEST_CASE("configuration errors exit with 2") {
    const fs::path dir = scratch("bad");
    fs::create_directories(dir);
    const fs::path cfg = dir / "bad.json";
    std::ofstream(cfg) << "{\n  \"layout\": {\"theta_plus\": [0.2, 0.5, 0.2]}\n}\n";
    const Run r = run("simulate --config " + cfg.string() + " --out " + dir.string());
    CHECK(r.code == 2);
    CHECK(r.output.find("bad.json:2") != std::string::npos);
    CHECK(run("simulate --config /nonexistent.json").code == 2);
    CHECK(run("no-such-command").code == 2);
}

TEST_CASE("validate passes on the symmetric preset") {
    const fs::path dir = scratch("validate");
    const Run r = run("validate --config " + kSymmetric + " --out " + dir.string());
    CHECK(r.code == 0);
    CHECK(r.output.find("FAIL") == std::string::npos);
    CHECK(slurp(dir / "validate.json").find("\"passed\": true") != std::string::npos);
}
