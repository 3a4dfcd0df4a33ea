#include <doctest.h>

#include <string>

#include "helpers.hpp"
#include "smm/errors.hpp"
#include "smm/json_locator.hpp"

using namespace smm;

namespace {

std::string all_problems(const std::string& text) {
    try {
        parse_config(text, "cfg.json");
    } catch (const ConfigError& e) {
        std::string out;
        for (const auto& p : e.problems()) out += p + "\n";
        return out;
    }
    return "";
}

}  // namespace

TEST_CASE("defaults") {
    const ExperimentConfig cfg = parse_config("{}");
    const ExperimentConfig ref;
    CHECK(cfg.delta == ref.delta);
    CHECK(cfg.h_plus.a == 0.75);
    CHECK(cfg.K == 2);
    CHECK(cfg.grid.n_t == 200);
    CHECK(cfg.seed == 42);
    CHECK(!cfg.portfolio_consistent_mj);
    CHECK(cfg.eta == 0.0);
    CHECK(!cfg.hash.empty());
    CHECK_NOTHROW(cfg.layout());
    CHECK_NOTHROW(cfg.make_grid());
}

TEST_CASE("presets load") {
    for (const char* name : {"symmetric", "asymmetric", "saturating"}) {
        const auto cfg = test::preset(name);
        CHECK(cfg.name == name);
        CHECK(cfg.portfolio_consistent_mj);
        CHECK_NOTHROW(cfg.market_making().validate(cfg.layout()));
    }
    CHECK(test::preset("saturating").h_plus.family == HazardSpec::Family::Saturating);
}

TEST_CASE("hash follows content, not formatting") {
    const auto a = parse_config(R"({"horizon": 2.0})");
    const auto b = parse_config("{\n  \"horizon\":   2.0\n}\n");
    const auto c = parse_config(R"({"horizon": 3.0})");
    CHECK(a.hash == b.hash);
    CHECK(a.hash != c.hash);
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
}

TEST_CASE("vanishing total hazard cites (A4)") {
    const std::string text = R"({
  "kernel": {
    "h_plus": {"family": "constant", "a": 0.0},
    "h_minus": {"family": "constant", "a": 0.0}
  }
})";
    const std::string msg = all_problems(text);
    CHECK(msg.find("(A4)") != std::string::npos);
    CHECK(msg.find("cfg.json:2:") != std::string::npos);
}

TEST_CASE("size law normalisation is reported with its line") {
    const std::string text = R"({
  "layout": {
    "K": 2,
    "theta_plus": [0.2, 0.5, 0.2]
  }
})";
    const std::string msg = all_problems(text);
    CHECK(msg.find("not normalised") != std::string::npos);
    CHECK(msg.find("cfg.json:4: /layout/theta_plus") != std::string::npos);
}

TEST_CASE("every problem is listed") {
    const std::string text = R"({
  "kernel": {"delta": 1.5, "h_plus": {"family": "weibull", "a": 1}},
  "initial": {"p": -1, "i": 7},
  "grid": {"n_t": 1},
  "colour": "blue"
})";
    const std::string msg = all_problems(text);
    CHECK(msg.find("/kernel/delta") != std::string::npos);
    CHECK(msg.find("unknown family") != std::string::npos);
    CHECK(msg.find("(A5)") != std::string::npos);
    CHECK(msg.find("(A6)") != std::string::npos);
    CHECK(msg.find("/grid/n_t") != std::string::npos);
    CHECK(msg.find("cfg.json:5: /colour: unknown key") != std::string::npos);
}

TEST_CASE("size laws of different support and bad types") {
    CHECK(all_problems(R"({"layout": {"K": 2, "theta_minus": [0.5, 0.5]}})").find("0..K") != std::string::npos);
    CHECK(!all_problems(R"({"run": {"n_paths": -5}})").empty());
    CHECK(!all_problems(R"({"flags": {"portfolio_consistent_mj": 1}})").empty());
    CHECK(!all_problems(R"({"flags": {"eta": -1}})").empty());
    CHECK(all_problems("{ \"horizon\": ").find("cfg.json:1") != std::string::npos);
}

TEST_CASE("missing file") { CHECK_THROWS_AS(load_config("/nonexistent/cfg.json"), ConfigError); }

TEST_CASE("json locator") {
    const std::string text = "{\n  \"a\": {\n    \"b\": [1,\n      2]\n  },\n  \"c\": \"x\"\n}";
    const JsonLocator loc(text);
    CHECK(loc.line("") == 1);
    CHECK(loc.line("/a") == 2);
    CHECK(loc.line("/a/b") == 3);
    CHECK(loc.line("/a/b/1") == 4);
    CHECK(loc.line("/c") == 6);
    CHECK(loc.line("/a/missing") == 2);
}
