#include "smm/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <type_traits>

#include <json.hpp>

#include "smm/errors.hpp"
#include "smm/json_locator.hpp"

namespace smm {

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
          std::string msg = "invalid configuration:";
          for (const auto& p : problems) msg += "\n  " + p;
          return msg;
      }()),
      problems_(std::move(problems)) {}

using nlohmann::json;

namespace {

class Reader {
public:
    Reader(const std::string& origin, const JsonLocator& loc) : origin_(origin), loc_(loc) {}

    void fail(const std::string& ptr, const std::string& msg) {
        problems.push_back(origin_ + ":" + std::to_string(loc_.line(ptr)) + ": " + (ptr.empty() ? "/" : ptr) + ": " +
                           msg);
    }

    // Reports members of obj outside `allowed`.
    void only(const json& obj, const std::string& ptr, std::initializer_list<const char*> allowed) {
        if (!obj.is_object()) {
            fail(ptr, "expected an object");
            return;
        }
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!ok.count(it.key())) fail(ptr + "/" + it.key(), "unknown key");
    }

    void number(const json& obj, const std::string& ptr, const char* key, double& out) {
        if (!obj.is_object() || !obj.contains(key)) return;
        const json& v = obj.at(key);
        if (!v.is_number()) {
            fail(ptr + "/" + key, "expected a number");
            return;
        }
        out = v.get<double>();
        if (!std::isfinite(out)) fail(ptr + "/" + key, "must be finite");
    }

    template <class Int>
    void integer(const json& obj, const std::string& ptr, const char* key, Int& out) {
        if (!obj.is_object() || !obj.contains(key)) return;
        const json& v = obj.at(key);
        if (!v.is_number_integer()) {
            fail(ptr + "/" + key, "expected an integer");
            return;
        }
        if constexpr (std::is_unsigned_v<Int>) {
            if (!v.is_number_unsigned()) {
                fail(ptr + "/" + key, "expected a non-negative integer");
                return;
            }
        }
        out = v.get<Int>();
    }

    void boolean(const json& obj, const std::string& ptr, const char* key, bool& out) {
        if (!obj.is_object() || !obj.contains(key)) return;
        const json& v = obj.at(key);
        if (!v.is_boolean()) {
            fail(ptr + "/" + key, "expected true or false");
            return;
        }
        out = v.get<bool>();
    }

    void text(const json& obj, const std::string& ptr, const char* key, std::string& out) {
        if (!obj.is_object() || !obj.contains(key)) return;
        const json& v = obj.at(key);
        if (!v.is_string()) {
            fail(ptr + "/" + key, "expected a string");
            return;
        }
        out = v.get<std::string>();
    }

    // Intensity spec; `bound_tag` names the boundedness assumption and
    // `family_tag` the regularity one.
    void intensity(const json& obj, const std::string& ptr, const char* key, HazardSpec& out, const char* family_tag,
                   const char* bound_tag) {
        if (!obj.is_object() || !obj.contains(key)) return;
        const json& v = obj.at(key);
        const std::string p = ptr + "/" + key;
        only(v, p, {"family", "a", "b", "c"});
        if (!v.is_object()) return;
        std::string family = "constant";
        text(v, p, "family", family);
        HazardSpec h;
        if (family == "constant") {
            h.family = HazardSpec::Family::Constant;
            if (v.contains("b") || v.contains("c")) fail(p, "constant family takes only 'a'");
        } else if (family == "saturating") {
            h.family = HazardSpec::Family::Saturating;
        } else {
            fail(p + "/family", std::string("unknown family '") + family +
                                    "'; only 'constant' and 'saturating' are continuously differentiable here " +
                                    family_tag);
            return;
        }
        number(v, p, "a", h.a);
        number(v, p, "b", h.b);
        number(v, p, "c", h.c);
        if (!(h.a >= 0.0)) fail(p + "/a", std::string("level a must be >= 0 and finite ") + bound_tag);
        if (h.family == HazardSpec::Family::Saturating) {
            if (!(h.b >= 0.0)) fail(p + "/b", std::string("gain b must be >= 0 and finite ") + bound_tag);
            if (!(h.c > 0.0)) fail(p + "/c", std::string("rate c must be > 0 ") + family_tag);
        }
        out = h;
    }

    void size_law(const json& obj, const std::string& ptr, const char* key, std::vector<double>& out) {
        if (!obj.is_object() || !obj.contains(key)) return;
        const json& v = obj.at(key);
        const std::string p = ptr + "/" + key;
        if (!v.is_array() || v.empty()) {
            fail(p, "expected a non-empty array of probabilities over sizes 0..K");
            return;
        }
        std::vector<double> r;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (!v[k].is_number()) {
                fail(p + "/" + std::to_string(k), "expected a number");
                return;
            }
            const double q = v[k].get<double>();
            if (!(q >= 0.0) || !std::isfinite(q)) fail(p + "/" + std::to_string(k), "probability must be >= 0");
            r.push_back(q);
        }
        double total = 0.0;
        for (double q : r) total += q;
        if (std::abs(total - 1.0) > 1e-9) {
            std::ostringstream msg;
            msg << "size law is not normalised: masses sum to " << total << ", expected 1";
            fail(p, msg.str());
        }
        out = r;
    }

    std::vector<std::string> problems;

private:
    std::string origin_;
    const JsonLocator& loc_;
};

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // Byte offset to line.
        std::size_t line = 1;
        for (std::size_t k = 0; k < std::min(e.byte, text.size()); ++k)
            if (text[k] == '\n') ++line;
        throw ConfigError({origin + ":" + std::to_string(line) + ": parse error: " + e.what()});
    }
    const JsonLocator loc(text);
    Reader rd(origin, loc);
    ExperimentConfig cfg;
    cfg.origin = origin;
    cfg.hash = fnv1a_hex(root.dump());

    rd.only(root, "", {"name", "kernel", "layout", "horizon", "initial", "grid", "run", "flags"});
    rd.text(root, "", "name", cfg.name);

    if (root.contains("kernel")) {
        const json& k = root["kernel"];
        rd.only(k, "/kernel", {"h_plus", "h_minus", "delta"});
        rd.intensity(k, "/kernel", "h_plus", cfg.h_plus, "(A1)", "(A2)");
        rd.intensity(k, "/kernel", "h_minus", cfg.h_minus, "(A1)", "(A2)");
        rd.number(k, "/kernel", "delta", cfg.delta);
    }
    if (cfg.h_plus.vanishes_identically())
        rd.fail("/kernel/h_plus", "h_plus vanishes identically, so its integral stays bounded (A3)");
    if (cfg.h_minus.vanishes_identically())
        rd.fail("/kernel/h_minus", "h_minus vanishes identically, so its integral stays bounded (A3)");
    if (!(cfg.h_plus.inf() + cfg.h_minus.inf() > 0.0))
        rd.fail("/kernel", "total hazard h_plus + h_minus vanishes at age 0; it must be positive everywhere (A4)");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) rd.fail("/kernel/delta", "relative tick delta must lie in (0, 1)");

    if (root.contains("layout")) {
        const json& l = root["layout"];
        rd.only(l, "/layout", {"lambda_plus", "lambda_minus", "theta_plus", "theta_minus", "K", "epsilon"});
        rd.intensity(l, "/layout", "lambda_plus", cfg.lambda_plus, "(A8)", "(A7)");
        rd.intensity(l, "/layout", "lambda_minus", cfg.lambda_minus, "(A8)", "(A7)");
        rd.size_law(l, "/layout", "theta_plus", cfg.theta_plus);
        rd.size_law(l, "/layout", "theta_minus", cfg.theta_minus);
        rd.integer(l, "/layout", "K", cfg.K);
        rd.number(l, "/layout", "epsilon", cfg.epsilon);
    }
    if (cfg.K < 1) rd.fail("/layout/K", "K must be >= 1");
    for (const auto& [key, law] : {std::pair{"theta_plus", &cfg.theta_plus}, std::pair{"theta_minus", &cfg.theta_minus}})
        if (static_cast<int>(law->size()) != cfg.K + 1)
            rd.fail(std::string("/layout/") + key,
                    "size law must list probabilities for sizes 0..K (" + std::to_string(cfg.K + 1) + " entries)");
    if (!(cfg.epsilon >= 0.0)) rd.fail("/layout/epsilon", "epsilon must be >= 0");

    rd.number(root, "", "horizon", cfg.T);
    if (!(cfg.T > 0.0)) rd.fail("/horizon", "horizon must be positive");

    if (root.contains("initial")) {
        const json& s = root["initial"];
        rd.only(s, "/initial", {"p", "i", "s", "x", "y"});
        rd.number(s, "/initial", "p", cfg.p0);
        rd.integer(s, "/initial", "i", cfg.i0);
        rd.number(s, "/initial", "s", cfg.s0);
        rd.number(s, "/initial", "x", cfg.x0);
        rd.integer(s, "/initial", "y", cfg.y0);
    }
    if (!(cfg.p0 > 0.0)) rd.fail("/initial/p", "initial price must be positive and finite (A5)");
    if (cfg.i0 < 1 || cfg.i0 > 4) rd.fail("/initial/i", "initial state must be in {1,2,3,4} (A6)");
    if (!(cfg.s0 >= 0.0)) rd.fail("/initial/s", "initial age must be >= 0 (A6)");

    if (root.contains("grid")) {
        const json& g = root["grid"];
        rd.only(g, "/grid", {"n_t", "N_max", "tol_fp", "tail_tol", "max_iter"});
        rd.integer(g, "/grid", "n_t", cfg.grid.n_t);
        if (g.is_object() && g.contains("N_max") && !g["N_max"].is_null()) rd.integer(g, "/grid", "N_max", cfg.grid.n_max);
        rd.number(g, "/grid", "tol_fp", cfg.grid.tol_fp);
        rd.number(g, "/grid", "tail_tol", cfg.grid.tail_tol);
        rd.integer(g, "/grid", "max_iter", cfg.grid.max_iter);
    }
    if (cfg.grid.n_t < 2) rd.fail("/grid/n_t", "n_t must be >= 2");
    if (!(cfg.grid.tol_fp > 0.0)) rd.fail("/grid/tol_fp", "tol_fp must be positive");
    if (!(cfg.grid.tail_tol > 0.0 && cfg.grid.tail_tol < 1.0)) rd.fail("/grid/tail_tol", "tail_tol must lie in (0, 1)");
    if (cfg.grid.max_iter < 1) rd.fail("/grid/max_iter", "max_iter must be >= 1");

    if (root.contains("run")) {
        const json& r = root["run"];
        rd.only(r, "/run", {"n_paths", "seed", "out"});
        rd.integer(r, "/run", "n_paths", cfg.n_paths);
        rd.integer(r, "/run", "seed", cfg.seed);
        rd.text(r, "/run", "out", cfg.out_dir);
    }
    if (cfg.n_paths < 1) rd.fail("/run/n_paths", "n_paths must be >= 1");

    if (root.contains("flags")) {
        const json& f = root["flags"];
        rd.only(f, "/flags", {"portfolio_consistent_mj", "eta"});
        rd.boolean(f, "/flags", "portfolio_consistent_mj", cfg.portfolio_consistent_mj);
        rd.number(f, "/flags", "eta", cfg.eta);
    }
    if (!(cfg.eta >= 0.0)) rd.fail("/flags/eta", "risk aversion eta must be >= 0");

    if (!rd.problems.empty()) throw ConfigError(rd.problems);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({path + ": cannot open configuration file"});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

SemiMarkovKernel ExperimentConfig::kernel() const { return SemiMarkovKernel(h_plus, h_minus, delta); }

MarkLayout ExperimentConfig::layout() const {
    return MarkLayout(kernel(), lambda_plus, lambda_minus, SizeLaw(theta_plus), SizeLaw(theta_minus));
}

MarketMakingSpec ExperimentConfig::market_making() const {
    MarketMakingSpec mm;
    mm.K = K;
    mm.epsilon = epsilon;
    mm.eta = eta;
    mm.portfolio_consistent_mj = portfolio_consistent_mj;
    return mm;
}

Grid ExperimentConfig::make_grid() const { return Grid(p0, delta, T, s0, grid, kernel().c1()); }

}  // namespace smm
