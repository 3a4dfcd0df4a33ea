// smm: command line front end.
//
//   smm simulate  --config presets/symmetric.json --out out
//   smm solve-pi  --config ...     writes pi_core.csv, pi_field.csv, pi_report.json
//   smm solve-u   --config ...     needs pi_core.csv
//   smm policy    --config ...     needs pi_core.csv
//   smm backtest  --config ...     needs pi_core.csv
//   smm validate  --config ...     full oracle suite, exit 1 on any failure
//
// Exit codes: 0 ok, 1 validation failure or runtime error, 2 config error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "smm/config.hpp"
#include "smm/errors.hpp"
#include "smm/io.hpp"
#include "smm/solver.hpp"
#include "smm/validation.hpp"

namespace fs = std::filesystem;
using namespace smm;

namespace {

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> paths;
    bool quiet = false;
};

struct Context {
    ExperimentConfig cfg;
    RunStamp stamp;
    fs::path out;
    bool quiet = false;

    std::string file(const std::string& name) const { return (out / name).string(); }
    void say(const std::string& msg) const {
        if (!quiet) std::cout << msg << std::endl;
    }
};

Context make_context(const Options& o) {
    Context c;
    c.cfg = o.config.empty() ? parse_config("{}", "<defaults>") : load_config(o.config);
    if (o.seed) c.cfg.seed = *o.seed;
    if (o.out) c.cfg.out_dir = *o.out;
    if (o.paths) c.cfg.n_paths = *o.paths;
    c.stamp = {c.cfg.hash, c.cfg.seed};
    c.out = c.cfg.out_dir;
    c.quiet = o.quiet;
    fs::create_directories(c.out);
    return c;
}

nlohmann::json log_json(const SolveLog& log) {
    return {{"iterations", log.iterations}, {"kappa", log.kappa}, {"diffs", log.diffs}, {"ratios", log.ratios}};
}

nlohmann::json residual_json(const ResidualStats& r) {
    return {{"max", r.max}, {"mean", r.mean}, {"interior_nodes", r.count}};
}

// pi rebuilt from the core written by solve-pi.
std::shared_ptr<const ValueField> load_pi(const Context& c) {
    const SemiMarkovKernel kernel = c.cfg.kernel();
    auto grid = std::make_shared<const Grid>(c.cfg.make_grid());
    CoreSolution sol;
    sol.core = read_core_csv(c.file("pi_core.csv"), *grid);
    sol.log.kappa = contraction_bound(kernel, *grid);
    return std::make_shared<const ValueField>(
        extend_to_age(kernel, grid, Problem::terminal([](double p) { return p; }), std::move(sol)));
}

std::shared_ptr<const DecisionField> decision_field(const Context& c, std::shared_ptr<const ValueField> pi) {
    if (c.cfg.eta > 0.0) throw UnsupportedError("η>0 unsupported: only the risk-neutral case eta = 0 is solved");
    return std::make_shared<const DecisionField>(std::move(pi), c.cfg.layout(), c.cfg.market_making());
}

int cmd_simulate(const Context& c) {
    const SemiMarkovKernel kernel = c.cfg.kernel();
    const auto paths = run_ensemble<Path>(c.cfg.n_paths, Execution::Parallel, [&](std::size_t k) {
        Stream rng(c.cfg.seed, k);
        return simulate_price_path(kernel, c.cfg.start(), 0.0, c.cfg.T, rng);
    });
    write_paths_csv(c.file("paths.csv"), paths, c.stamp);
    write_json(c.file("paths_summary.json"), paths_summary(paths), c.stamp);
    c.say("simulated " + std::to_string(paths.size()) + " paths -> " + c.file("paths.csv"));
    return 0;
}

int cmd_solve_pi(const Context& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const SemiMarkovKernel kernel = c.cfg.kernel();
    auto grid = std::make_shared<const Grid>(c.cfg.make_grid());
    const ValueField pi = solve_pi(kernel, grid);
    const ResidualStats res = pde_residual(pi);
    write_core_csv(c.file("pi_core.csv"), pi, c.stamp);
    write_field_csv(c.file("pi_field.csv"), pi, 10, c.stamp);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_json(c.file("pi_report.json"),
               {{"field", "pi"},
                {"n_t", grid->n_t()},
                {"lattice_depth", grid->lattice().n_max()},
                {"picard", log_json(pi.log())},
                {"residual", residual_json(res)},
                {"seconds", secs}},
               c.stamp);
    c.say("pi: " + std::to_string(pi.log().iterations) + " Picard steps, max residual " + std::to_string(res.max) +
          " -> " + c.file("pi_core.csv"));
    return 0;
}

int cmd_solve_u(const Context& c) {
    if (c.cfg.eta > 0.0) throw UnsupportedError("η>0 unsupported: only the risk-neutral case eta = 0 is solved");
    const auto decision = decision_field(c, load_pi(c));
    const ValueField u = solve_u(decision);
    const ResidualStats res = pde_residual(u);
    write_core_csv(c.file("u_core.csv"), u, c.stamp);
    write_field_csv(c.file("u_field.csv"), u, 10, c.stamp);
    const double j0 = value_J0(decision->pi(), u, 0.0, c.cfg.p0, State(c.cfg.i0), c.cfg.s0, c.cfg.x0,
                               static_cast<double>(c.cfg.y0));
    write_json(c.file("u_report.json"),
               {{"field", "u"}, {"picard", log_json(u.log())}, {"residual", residual_json(res)}, {"J0", j0}},
               c.stamp);
    c.say("u: " + std::to_string(u.log().iterations) + " Picard steps, J0 = " + std::to_string(j0) + " -> " +
          c.file("u_core.csv"));
    return 0;
}

int cmd_policy(const Context& c) {
    if (c.cfg.eta > 0.0) throw UnsupportedError("η>0 unsupported: only the risk-neutral case eta = 0 is solved");
    const auto decision = decision_field(c, load_pi(c));
    write_policy_csv(c.file("policy.csv"), *decision, 10, c.stamp);
    c.say("decision functions -> " + c.file("policy.csv"));
    return 0;
}

int cmd_backtest(const Context& c) {
    if (c.cfg.eta > 0.0) throw UnsupportedError("η>0 unsupported: only the risk-neutral case eta = 0 is solved");
    const auto decision = decision_field(c, load_pi(c));
    std::vector<Policy> policies{optimal_policy(decision)};
    for (auto& b : baseline_policies(c.cfg.seed)) policies.push_back(b);
    BacktestSetup setup;
    setup.start = c.cfg.start();
    setup.agent = c.cfg.agent();
    setup.T = c.cfg.T;
    setup.n_paths = c.cfg.n_paths;
    setup.seed = c.cfg.seed;
    const auto rows = backtest(policies, c.cfg.layout(), c.cfg.market_making(), setup);
    const ValueField u = solve_u(decision);
    const double j0 = value_J0(decision->pi(), u, 0.0, c.cfg.p0, State(c.cfg.i0), c.cfg.s0, c.cfg.x0,
                               static_cast<double>(c.cfg.y0));
    write_backtest_csv(c.file("backtest.csv"), rows, c.stamp);
    nlohmann::json doc = {{"J0", j0}, {"n_paths", setup.n_paths}};
    for (const auto& r : rows)
        doc["policies"].push_back({{"policy", r.policy},
                                   {"utility", r.utility.mean},
                                   {"utility_se", r.utility.se},
                                   {"wealth", r.wealth.mean},
                                   {"bound", r.bound}});
    write_json(c.file("backtest.json"), doc, c.stamp);
    if (!c.quiet) {
        std::printf("%-12s %14s %12s %14s\n", "policy", "J", "SE", "bound");
        for (const auto& r : rows)
            std::printf("%-12s %14.6f %12.6f %14.6f\n", r.policy.c_str(), r.utility.mean, r.utility.se, r.bound);
        std::printf("value J0 = %.6f\n", j0);
    }
    return 0;
}

int cmd_validate(const Context& c, std::optional<std::size_t> paths) {
    ValidationSizes sizes;
    if (paths) sizes.mc_paths = sizes.dynkin_paths = sizes.backtest_paths = *paths;
    std::vector<CheckResult> results;
    auto run = [&](CheckResult r) {
        if (!c.quiet)
            std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << (r.applicable ? "" : " (n/a)") << ": " << r.detail
                      << std::endl;
        results.push_back(std::move(r));
    };
    run(check_kernel_identities(c.cfg));
    run(check_distributions(c.cfg, sizes));
    run(check_closed_forms(c.cfg, sizes));
    run(check_contraction(c.cfg));
    run(check_residual_order(c.cfg, sizes));
    run(check_stochastic_representation(c.cfg, sizes));
    run(check_dynkin(c.cfg, sizes));
    std::vector<BacktestRow> rows;
    run(check_optimality(c.cfg, {{c.cfg.delta, c.cfg.epsilon}}, sizes, &rows));
    run(check_wealth_bound(rows));
    run(check_degenerate(c.cfg));

    bool ok = true;
    nlohmann::json doc;
    for (const auto& r : results) {
        ok = ok && r.passed;
        doc["checks"].push_back(
            {{"name", r.name}, {"passed", r.passed}, {"applicable", r.applicable}, {"detail", r.detail}, {"data", r.data}});
    }
    doc["passed"] = ok;
    write_json(c.file("validate.json"), doc, c.stamp);
    c.say(ok ? "validate: all checks passed" : "validate: FAILED");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semi-Markov tick model: simulation, terminal value solver and market making"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON experiment file (defaults apply when omitted)");
        sub->add_option("--seed", o.seed, "master seed, overrides run.seed");
        sub->add_option("--out", o.out, "output directory, overrides run.out");
        sub->add_option("--paths", o.paths, "number of paths, overrides run.n_paths");
        sub->add_flag("--quiet", o.quiet, "no progress output");
    };
    auto* simulate = app.add_subcommand("simulate", "renewal paths of (P, I, S) to paths.csv");
    auto* solve_pi_cmd = app.add_subcommand("solve-pi", "expected terminal price pi on the grid");
    auto* solve_u_cmd = app.add_subcommand("solve-u", "value u of the market maker (needs solve-pi)");
    auto* policy = app.add_subcommand("policy", "decision functions and optimal quotes (needs solve-pi)");
    auto* backtest_cmd = app.add_subcommand("backtest", "optimal policy against the baselines (needs solve-pi)");
    auto* validate = app.add_subcommand("validate", "run the oracle suite");
    for (auto* sub : {simulate, solve_pi_cmd, solve_u_cmd, policy, backtest_cmd, validate}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        const Context c = make_context(o);
        if (simulate->parsed()) return cmd_simulate(c);
        if (solve_pi_cmd->parsed()) return cmd_solve_pi(c);
        if (solve_u_cmd->parsed()) return cmd_solve_u(c);
        if (policy->parsed()) return cmd_policy(c);
        if (backtest_cmd->parsed()) return cmd_backtest(c);
        if (validate->parsed()) return cmd_validate(c, o.paths);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const DependencyError& e) {
        std::cerr << "dependency error: " << e.what() << '\n';
        return 1;
    } catch (const UnsupportedError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
