// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
// Tolerances and sample sizes are the published targets; see ValidationSizes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "smm/config.hpp"
#include "smm/validation.hpp"

#ifndef PRESET_DIR
#define PRESET_DIR "presets"
#endif

using namespace smm;

namespace {

ExperimentConfig preset(const std::string& name) { return load_config(std::string(PRESET_DIR) + "/" + name + ".json"); }

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<std::vector<CheckResult>()> run;
};

}  // namespace

int main() {
    const ExperimentConfig sym = preset("symmetric");
    const ExperimentConfig asym = preset("asymmetric");
    const ExperimentConfig sat = preset("saturating");
    const std::vector<const ExperimentConfig*> all{&sym, &asym, &sat};
    const ValidationSizes sizes;
    std::vector<BacktestRow> rows;

    const std::vector<Criterion> criteria{
        {1, "kernel identities", 1.0,
         [&] {
             std::vector<CheckResult> out;
             for (auto* c : all) out.push_back(check_kernel_identities(*c));
             return out;
         }},
        {2, "distributional correctness", 30.0,
         [&] {
             std::vector<CheckResult> out;
             for (auto* c : all) out.push_back(check_distributions(*c, sizes));
             return out;
         }},
        {3, "solver vs closed forms", 20.0,  // two presets at 10 s each
         [&] { return std::vector{check_closed_forms(sym, sizes), check_closed_forms(asym, sizes)}; }},
        {4, "contraction", 0.0,
         [&] {
             std::vector<CheckResult> out;
             for (auto* c : all) out.push_back(check_contraction(*c));
             return out;
         }},
        {5, "PDE residual order", 0.0, [&] { return std::vector{check_residual_order(asym, sizes)}; }},
        {6, "stochastic representation", 120.0,
         [&] { return std::vector{check_stochastic_representation(sat, sizes)}; }},
        {7, "Dynkin battery", 0.0, [&] { return std::vector{check_dynkin(sat, sizes)}; }},
        {8, "optimality", 180.0,
         [&] {
             std::vector<std::pair<double, double>> sweep;
             for (double d : {0.005, 0.01, 0.02})
                 for (double e : {0.1, 0.3, 0.6}) sweep.emplace_back(d, e);
             return std::vector{check_optimality(sat, sweep, sizes, &rows)};
         }},
        {9, "wealth bound", 0.0, [&] { return std::vector{check_wealth_bound(rows)}; }},
        {10, "degenerate sanity", 0.0,
         [&] {
             std::vector<CheckResult> out;
             for (auto* c : all) out.push_back(check_degenerate(*c));
             return out;
         }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<CheckResult> results;
        std::string error;
        try {
            results = c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = error.empty();
        for (const auto& r : results) ok = ok && r.passed;
        const bool in_time = c.budget_seconds <= 0.0 || secs < c.budget_seconds;
        ok = ok && in_time;
        failed += ok ? 0 : 1;
        std::printf("criterion %2d %s: %s (%.1f s%s)\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(), secs,
                    in_time ? "" : ", over time budget");
        if (!error.empty()) std::printf("    error: %s\n", error.c_str());
        for (const auto& r : results)
            std::printf("    [%s] %s\n", r.passed ? "ok" : "failed", r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
