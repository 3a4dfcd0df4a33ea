#include "smm/validation.hpp"

#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>

#include "smm/closed_form.hpp"
#include "smm/errors.hpp"
#include "smm/mc_oracle.hpp"
#include "smm/solver.hpp"

namespace smm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

}  // namespace

SolvedModel solve_model(const ExperimentConfig& cfg, bool with_u) {
    SolvedModel m;
    const SemiMarkovKernel kernel = cfg.kernel();
    m.grid = std::make_shared<const Grid>(cfg.make_grid());
    m.pi = std::make_shared<const ValueField>(solve_pi(kernel, m.grid));
    m.decision = std::make_shared<const DecisionField>(m.pi, cfg.layout(), cfg.market_making());
    if (with_u) m.u = std::make_shared<const ValueField>(solve_u(m.decision));
    return m;
}

CheckResult check_kernel_identities(const ExperimentConfig& cfg) {
    CheckResult r;
    r.name = "kernel identities";
    const SemiMarkovKernel k = cfg.kernel();
    double worst_identity = 0.0, worst_sum = 0.0;
    bool monotone = true;
    double prev_F = -1.0;
    for (int n = 0; n < 200; ++n) {
        const double y = 10.0 * n / 199.0;
        const double F = k.cdf(y);
        const double survival = k.survival(y);  // 1 - F without cancellation
        monotone = monotone && F > prev_F && F < 1.0;
        prev_F = F;
        for (State i : kStates) {
            double sum = 0.0;
            for (State j : successors(i)) {
                const double pij = k.transition_prob(i, j, y);
                sum += pij;
                worst_identity =
                    std::max(worst_identity, std::abs(k.density(y) * pij / survival - k.directed_hazard(i, j, y)));
            }
            worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        }
    }
    r.passed = worst_identity <= 1e-12 && worst_sum <= 1e-12 && monotone;
    r.detail = "max |f p_ij/(1-F) - h_ij| = " + fmt(worst_identity) + ", max |sum p_ij - 1| = " + fmt(worst_sum) +
               (monotone ? "" : ", F not strictly increasing below 1");
    r.data = {{"identity", worst_identity}, {"sum", worst_sum}, {"monotone", monotone}};
    return r;
}

CheckResult check_distributions(const ExperimentConfig& cfg, const ValidationSizes& sizes) {
    CheckResult r;
    r.name = "distributional correctness";
    const SemiMarkovKernel k = cfg.kernel();
    const MarkLayout layout = cfg.layout();
    const std::size_t n = sizes.ks_samples;
    bool ok = true;
    std::ostringstream detail;

    for (double s0 : {0.0, 0.5}) {
        Stream rng(cfg.seed, 1000 + static_cast<std::uint64_t>(s0 * 10));
        std::vector<double> w(n);
        for (auto& x : w) x = sample_holding(k, s0, rng.uniform());
        const double base = k.cdf(s0);
        const auto ks = ks_one_sample(w, [&](double x) { return (k.cdf(s0 + x) - base) / (1.0 - base); });
        ok = ok && ks.p_value > 0.01;
        detail << "holding(s0=" << s0 << ") KS p=" << fmt(ks.p_value) << "; ";
        r.data["holding_ks_p"].push_back(ks.p_value);
    }

    double worst_sigma = 0.0;
    for (State i : kStates) {
        for (double y : {0.0, 0.5, 2.0}) {
            Stream rng(cfg.seed, 2000 + i.value() * 10 + static_cast<int>(y * 2));
            const State j1 = successors(i)[0];
            std::size_t hits = 0;
            for (std::size_t m = 0; m < n; ++m) hits += sample_transition(k, i, y, rng.uniform()) == j1 ? 1 : 0;
            const double p = k.transition_prob(i, j1, y);
            const double sd = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
            const double dev = std::abs(static_cast<double>(hits) / static_cast<double>(n) - p);
            worst_sigma = std::max(worst_sigma, sd > 0.0 ? dev / sd : (dev > 0.0 ? 1e9 : 0.0));
        }
    }
    ok = ok && worst_sigma <= 3.0;
    detail << "transition freq max dev " << fmt(worst_sigma) << " sigma; ";
    r.data["transition_max_sigma"] = worst_sigma;

    std::vector<double> first_r(n), first_t(n), price_r(n), price_t(n), count_r(n), count_t(n);
    auto fill = [&](const Path& p, double& first, double& price, double& count) {
        first = p.events.empty() ? cfg.T : p.events.front().time;
        price = p.terminal.p;
        count = static_cast<double>(p.big_jumps);
    };
    for (std::size_t m = 0; m < n; ++m) {
        Stream a(cfg.seed + 1, m), b(cfg.seed + 2, m);
        fill(simulate_price_path(k, cfg.start(), 0.0, cfg.T, a), first_r[m], price_r[m], count_r[m]);
        fill(simulate_price_path_thinning(layout, cfg.start(), 0.0, cfg.T, b), first_t[m], price_t[m], count_t[m]);
    }
    const auto ks_first = ks_two_sample(first_r, first_t);
    const auto ks_price = ks_two_sample(price_r, price_t);
    const auto ks_count = ks_two_sample(count_r, count_t);
    ok = ok && ks_first.p_value > 0.01 && ks_price.p_value > 0.01 && ks_count.p_value > 0.01;
    detail << "renewal vs thinning KS p: first jump " << fmt(ks_first.p_value) << ", terminal price "
           << fmt(ks_price.p_value) << ", jump count " << fmt(ks_count.p_value);
    r.data["renewal_thinning_p"] = {ks_first.p_value, ks_price.p_value, ks_count.p_value};
    r.passed = ok;
    r.detail = detail.str();
    return r;
}

CheckResult check_closed_forms(const ExperimentConfig& cfg, const ValidationSizes& sizes) {
    CheckResult r;
    r.name = "solver vs closed forms";
    if (!(cfg.h_plus.is_constant() && cfg.h_minus.is_constant())) {
        r.applicable = false;
        r.passed = true;
        r.detail = "not applicable: age-dependent hazards";
        return r;
    }
    ExperimentConfig c = cfg;
    c.grid.n_t = sizes.closed_form_n_t;
    const auto t0 = Clock::now();
    const SemiMarkovKernel k = c.kernel();
    auto grid = std::make_shared<const Grid>(c.make_grid());
    const ValueField pi = solve_pi(k, grid);
    const double solve_time = seconds_since(t0);
    const bool symmetric = cfg.h_plus.a == cfg.h_minus.a;
    const double tol = symmetric ? 1e-6 : 1e-4;

    auto exact = [&](int n, std::size_t node, State i) {
        const double p = grid->lattice().price(node);
        return symmetric ? p : pi_constant_hazards(k, c.T, grid->t(n), p, i);
    };
    double worst_core = 0.0;
    for (std::size_t node = 0; node < grid->nodes(); ++node)
        for (State i : kStates)
            for (int n = 0; n <= grid->n_t(); ++n) {
                const double e = exact(n, node, i);
                worst_core = std::max(worst_core, std::abs(pi.core(n, node, i) - e) / e);
            }
    std::vector<double> col_worst(grid->nodes() * 4, 0.0);
    pi.for_each_column([&](std::size_t node, State i, std::span<const double> col) {
        double w = 0.0;
        for (int n = 0; n <= grid->n_t(); ++n) {
            const double e = exact(n, node, i);
            for (int q = 0; q < grid->ages(n); ++q) w = std::max(w, std::abs(col[grid->wedge_index(n, q)] - e) / e);
        }
        col_worst[node * 4 + i.index()] = w;
    });
    double worst_ext = 0.0;
    for (double w : col_worst) worst_ext = std::max(worst_ext, w);
    const double total_time = seconds_since(t0);
    r.passed = worst_core <= tol && worst_ext <= tol;
    r.detail = std::string(symmetric ? "pi = p" : "matrix exponential") + " oracle at n_t=" +
               std::to_string(c.grid.n_t) + ": max rel err core " + fmt(worst_core) + ", all ages " +
               fmt(worst_ext) + " (tol " + fmt(tol) + "), solve " + fmt(solve_time) + " s, total " +
               fmt(total_time) + " s";
    r.data = {{"symmetric", symmetric},      {"core_rel_err", worst_core}, {"field_rel_err", worst_ext},
              {"tolerance", tol},            {"solve_seconds", solve_time}, {"total_seconds", total_time},
              {"n_t", c.grid.n_t}};
    return r;
}

CheckResult check_contraction(const ExperimentConfig& cfg) {
    CheckResult r;
    r.name = "contraction";
    ExperimentConfig c = cfg;
    c.grid.tol_fp = 1e-8;
    const SolvedModel m = solve_model(c, cfg.eta == 0.0);
    bool ok = true;
    std::ostringstream detail;
    auto judge = [&](const char* label, const SolveLog& log) {
        double worst = 0.0;
        for (double q : log.ratios) worst = std::max(worst, q);
        const int budget = static_cast<int>(std::ceil(std::log(1e-8) / std::log(log.kappa))) + 5;
        const bool good = worst <= log.kappa + 0.01 && log.iterations <= budget;
        ok = ok && good;
        detail << label << ": max ratio " << fmt(worst) << " vs kappa " << fmt(log.kappa) << ", " << log.iterations
               << " iterations (budget " << budget << "); ";
        r.data[label] = {{"ratios", log.ratios}, {"kappa", log.kappa}, {"iterations", log.iterations},
                         {"budget", budget}};
    };
    judge("pi", m.pi->log());
    if (m.u) judge("u", m.u->log());
    r.passed = ok;
    r.detail = detail.str();
    return r;
}

CheckResult check_residual_order(const ExperimentConfig& cfg, const ValidationSizes& sizes) {
    CheckResult r;
    r.name = "PDE residual order";
    std::vector<double> maxima;
    ExperimentConfig c = cfg;
    c.grid.tol_fp = 1e-12;  // keep the fixed-point error well below the truncation error
    const SemiMarkovKernel k = c.kernel();
    for (int n_t : sizes.refinement) {
        c.grid.n_t = n_t;
        auto grid = std::make_shared<const Grid>(c.make_grid());
        const ValueField pi = solve_pi(k, grid);
        maxima.push_back(pde_residual(pi).max);
    }
    std::ostringstream detail;
    double worst_order = std::numeric_limits<double>::infinity();
    std::vector<double> orders;
    for (std::size_t a = 0; a + 1 < maxima.size(); ++a) {
        const double order = std::log(maxima[a] / maxima[a + 1]) /
                             std::log(static_cast<double>(sizes.refinement[a + 1]) / sizes.refinement[a]);
        orders.push_back(order);
        worst_order = std::min(worst_order, order);
    }
    detail << "max residual";
    for (std::size_t a = 0; a < maxima.size(); ++a) detail << " n_t=" << sizes.refinement[a] << ":" << fmt(maxima[a]);
    detail << "; observed orders";
    for (double o : orders) detail << ' ' << fmt(o);
    r.passed = worst_order >= 1.8;
    r.detail = detail.str();
    r.data = {{"n_t", sizes.refinement}, {"max_residual", maxima}, {"orders", orders}};
    return r;
}

namespace {

struct Probe {
    int n;
    std::size_t node;
    State i;
    int q;
};

std::vector<Probe> probes(const Grid& g) {
    const double t_frac[10] = {0.0, 0.1, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6, 0.75, 0.9};
    const double s_frac[5] = {0.0, 0.5, 1.0, 0.25, 0.75};
    const std::pair<int, int> lv[6] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}};
    std::vector<Probe> out;
    for (int k = 0; k < 10; ++k) {
        const int n = static_cast<int>(std::lround(t_frac[k] * g.n_t()));
        const int q = static_cast<int>(std::lround(s_frac[k % 5] * (g.ages(n) - 1)));
        out.push_back({n, PriceLattice::index(lv[k % 6].first, lv[k % 6].second), kStates[static_cast<std::size_t>(k % 4)], q});
    }
    return out;
}

}  // namespace

CheckResult check_stochastic_representation(const ExperimentConfig& cfg, const ValidationSizes& sizes) {
    CheckResult r;
    r.name = "stochastic representation";
    const auto t0 = Clock::now();
    const SolvedModel m = solve_model(cfg);
    const SemiMarkovKernel k = cfg.kernel();
    const Grid& g = *m.grid;
    double worst = 0.0;
    std::ostringstream detail;
    int idx = 0;
    for (const Probe& pr : probes(g)) {
        const StartPoint start{g.t(pr.n), g.lattice().price(pr.node), pr.i, pr.q * g.h()};
        const double pi_solver = m.pi->at_node(pr.n, pr.node, pr.i, pr.q);
        const double u_solver = m.u->at_node(pr.n, pr.node, pr.i, pr.q);
        const auto mc_pi = estimate_terminal_value(k, [](double p) { return p; }, nullptr, start, cfg.T,
                                                   sizes.mc_paths, cfg.seed + 100 + idx);
        const auto mc_u = estimate_terminal_value(k, [](double) { return 0.0; }, m.decision.get(), start, cfg.T,
                                                  sizes.mc_paths, cfg.seed + 200 + idx);
        double z_pi, z_u;
        try {
            z_pi = z_compare(pi_solver, mc_pi);
            z_u = z_compare(u_solver, mc_u);
        } catch (const NumericalError&) {
            z_pi = z_u = std::numeric_limits<double>::infinity();
        }
        worst = std::max({worst, std::abs(z_pi), std::abs(z_u)});
        r.data["points"].push_back({{"t", start.t}, {"p", start.p}, {"i", start.i.value()}, {"s", start.s},
                                    {"pi_solver", pi_solver}, {"pi_mc", mc_pi.mean}, {"pi_se", mc_pi.se},
                                    {"z_pi", z_pi}, {"u_solver", u_solver}, {"u_mc", mc_u.mean},
                                    {"u_se", mc_u.se}, {"z_u", z_u}});
        ++idx;
    }
    r.passed = worst < 3.0;
    detail << "10 points, " << sizes.mc_paths << " paths each: max |z| = " << fmt(worst) << " over pi and u ("
           << fmt(seconds_since(t0)) << " s)";
    r.detail = detail.str();
    return r;
}

CheckResult check_dynkin(const ExperimentConfig& cfg, const ValidationSizes& sizes) {
    CheckResult r;
    r.name = "Dynkin battery";
    const MarkLayout layout = cfg.layout();
    DynkinSetup setup;
    setup.start = cfg.start();
    setup.agent = cfg.agent();
    setup.horizon = cfg.T;
    setup.epsilon = cfg.epsilon;
    setup.n_paths = sizes.dynkin_paths;
    double worst = 0.0;
    int idx = 0;
    for (const TestFunction& psi : dynkin_battery(cfg.p0)) {
        for (bool controlled : {false, true}) {
            setup.controlled = controlled;
            setup.seed = cfg.seed + 300 + idx++;
            const DynkinResult d = dynkin_check(layout, psi, setup);
            worst = std::max(worst, std::abs(d.z));
            r.data["checks"].push_back({{"function", psi.name}, {"controlled", controlled}, {"mean", d.estimate.mean},
                                        {"se", d.estimate.se}, {"z", d.z}});
        }
    }
    setup.controlled = true;
    setup.small_orders = false;
    setup.seed = cfg.seed + 399;
    const DynkinResult ablated = dynkin_check(layout, inventory_square(), setup);
    r.data["ablation"] = {{"function", ablated.name}, {"z", ablated.z}};
    r.passed = worst < 3.0 && std::abs(ablated.z) > 3.0;
    r.detail = "max |z| over 10 checks = " + fmt(worst) + ", ablated generator |z| = " + fmt(std::abs(ablated.z));
    return r;
}

CheckResult check_optimality(const ExperimentConfig& cfg, const std::vector<std::pair<double, double>>& sweep,
                             const ValidationSizes& sizes, std::vector<BacktestRow>* rows_out) {
    CheckResult r;
    r.name = "optimality";
    const auto t0 = Clock::now();
    bool ok = true;
    double worst_gap = -std::numeric_limits<double>::infinity();  // (J_base - J_opt) / se, maximised
    double worst_value_z = 0.0;
    for (const auto& [delta, eps] : sweep) {
        ExperimentConfig c = cfg;
        c.delta = delta;
        c.epsilon = eps;
        const SolvedModel m = solve_model(c);
        std::vector<Policy> policies{optimal_policy(m.decision)};
        for (auto& b : baseline_policies(c.seed)) policies.push_back(b);
        BacktestSetup setup;
        setup.start = c.start();
        setup.agent = c.agent();
        setup.T = c.T;
        setup.n_paths = sizes.backtest_paths;
        setup.seed = c.seed;
        const auto rows = backtest(policies, c.layout(), c.market_making(), setup);
        const McEstimate& opt = rows.front().utility;
        nlohmann::json entry = {{"delta", delta}, {"epsilon", eps}};
        for (std::size_t b = 1; b < rows.size(); ++b) {
            const double se = std::hypot(opt.se, rows[b].utility.se);
            const bool good = opt.mean >= rows[b].utility.mean - 2.0 * se;
            ok = ok && good;
            if (se > 0.0) worst_gap = std::max(worst_gap, (rows[b].utility.mean - opt.mean) / se);
            entry["baselines"].push_back(
                {{"policy", rows[b].policy}, {"mean", rows[b].utility.mean}, {"se", rows[b].utility.se}});
        }
        const double j0 = value_J0(*m.pi, *m.u, 0.0, c.p0, State(c.i0), c.s0, c.x0, static_cast<double>(c.y0));
        double z;
        try {
            z = z_compare(j0, opt);
        } catch (const NumericalError&) {
            z = std::numeric_limits<double>::infinity();
        }
        ok = ok && std::abs(z) < 3.0;
        worst_value_z = std::max(worst_value_z, std::abs(z));
        entry["optimal"] = {{"mean", opt.mean}, {"se", opt.se}, {"value_J0", j0}, {"z", z}};
        r.data["sweep"].push_back(entry);
        if (rows_out) rows_out->insert(rows_out->end(), rows.begin(), rows.end());
    }
    r.passed = ok;
    r.detail = std::to_string(sweep.size()) + " (delta, epsilon) pairs: worst (J_base - J_opt)/se = " +
               fmt(worst_gap) + " (limit 2), worst |J_opt - J0|/se = " + fmt(worst_value_z) + " (limit 3), " +
               fmt(seconds_since(t0)) + " s";
    return r;
}

CheckResult check_wealth_bound(const std::vector<BacktestRow>& rows) {
    CheckResult r;
    r.name = "wealth bound";
    bool ok = !rows.empty();
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
        ok = ok && row.wealth.mean <= row.bound;
        worst = std::max(worst, row.wealth.mean - row.bound);
    }
    r.passed = ok;
    r.detail = std::to_string(rows.size()) + " ensembles: max (E[X_T + P_T Y_T] - bound) = " + fmt(worst);
    r.data = {{"ensembles", rows.size()}, {"worst_margin", worst}};
    return r;
}

CheckResult check_degenerate(const ExperimentConfig& cfg) {
    CheckResult r;
    r.name = "degenerate sanity";
    ExperimentConfig c = cfg;
    const Grid probe = c.make_grid();
    double p_max = 0.0;
    for (std::size_t k = 0; k < probe.nodes(); ++k) p_max = std::max(p_max, probe.lattice().price(k));
    c.epsilon = 1.01 * c.delta * (c.portfolio_consistent_mj ? p_max : 1.0);
    const SolvedModel m = solve_model(c);
    const Grid& g = *m.grid;

    std::mutex mu;
    double max_m = -std::numeric_limits<double>::infinity();
    double max_u = 0.0, min_u = 0.0;
    std::size_t bad_bits = 0;
    m.u->for_each_column([&](std::size_t node, State i, std::span<const double> ucol) {
        const auto pcol = m.pi->column(node, i);
        double lm = -std::numeric_limits<double>::infinity(), lmax = 0.0, lmin = 0.0;
        std::size_t lbad = 0;
        for (int n = 0; n <= g.n_t(); ++n) {
            for (int q = 0; q < g.ages(n); ++q) {
                const std::size_t w = g.wedge_index(n, q);
                for (State j : successors(i)) {
                    const double mj = m.decision->m_node(n, node, i, q, j, pcol[w]);
                    lm = std::max(lm, mj);
                    if (mj <= 0.0) {
                        const Control l = m.decision->control(g.t(n), g.lattice().price(node), i, q * g.h());
                        if (l.on(alpha_bar(j)) != 0) ++lbad;
                    }
                }
                lmax = std::max(lmax, ucol[w]);
                lmin = std::min(lmin, ucol[w]);
            }
        }
        std::lock_guard lock(mu);
        max_m = std::max(max_m, lm);
        max_u = std::max(max_u, lmax);
        min_u = std::min(min_u, lmin);
        bad_bits += lbad;
    });
    const bool regime = max_m <= 0.0;
    r.passed = bad_bits == 0 && min_u >= 0.0 && (!regime || max_u == 0.0);
    r.detail = "epsilon = " + fmt(c.epsilon) + ": max m_j on grid " + fmt(max_m) + ", u in [" + fmt(min_u) + ", " +
               fmt(max_u) + "], quoting bits where m_j <= 0: " + std::to_string(bad_bits);
    if (!regime) r.detail += " (m_j > 0 somewhere, u = 0 not required)";
    r.data = {{"epsilon", c.epsilon}, {"max_m", max_m}, {"u_max", max_u}, {"u_min", min_u}, {"bad_bits", bad_bits}};
    return r;
}

}  // namespace smm
