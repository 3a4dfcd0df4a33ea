#include "smm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "smm/errors.hpp"

namespace smm {

namespace {

std::ofstream open_out(const std::string& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file);
    out.precision(17);
    return out;
}

std::string grid_line(const Grid& g) {
    std::ostringstream os;
    os.precision(17);
    os << "# grid n_t=" << g.n_t() << " n_max=" << g.lattice().n_max() << " p0=" << g.lattice().p0()
       << " delta=" << g.lattice().delta() << " T=" << g.T() << " s0=" << g.s0();
    return os.str();
}

const char* kind_name(MarkEvent::Kind k) {
    switch (k) {
        case MarkEvent::Kind::BigJump: return "big";
        case MarkEvent::Kind::SmallOrder: return "small";
        default: return "none";
    }
}

}  // namespace

std::string csv_header(const RunStamp& stamp) {
    return "# config_hash=" + stamp.config_hash + " master_seed=" + std::to_string(stamp.seed) + "\n";
}

void write_paths_csv(const std::string& file, const std::vector<Path>& paths, const RunStamp& stamp) {
    auto out = open_out(file);
    out << csv_header(stamp);
    out << "path,time,kind,j_or_nu,k,p_pre,p_post,s_pre,x_post,y_post,l_plus,l_minus\n";
    for (std::size_t k = 0; k < paths.size(); ++k) {
        for (const JumpEvent& ev : paths[k].events) {
            out << k << ',' << ev.time << ',' << kind_name(ev.kind) << ',';
            if (ev.kind == MarkEvent::Kind::BigJump)
                out << ev.target.value();
            else
                out << (ev.side == Side::Plus ? '+' : '-');
            out << ',' << ev.size << ',' << ev.pre.p << ',' << ev.post.p << ',' << ev.pre.s << ','
                << ev.agent_post.x << ',' << ev.agent_post.y << ',' << ev.control.plus << ',' << ev.control.minus
                << '\n';
        }
    }
}

nlohmann::json paths_summary(const std::vector<Path>& paths) {
    nlohmann::json arr = nlohmann::json::array();
    double price = 0.0, jumps = 0.0;
    for (const Path& p : paths) {
        price += p.terminal.p;
        jumps += static_cast<double>(p.big_jumps);
        arr.push_back({{"terminal", {{"p", p.terminal.p}, {"i", p.terminal.i.value()}, {"s", p.terminal.s}}},
                       {"agent", {{"x", p.agent_terminal.x}, {"y", p.agent_terminal.y}}},
                       {"big_jumps", p.big_jumps},
                       {"small_orders", p.small_orders}});
    }
    const double n = paths.empty() ? 1.0 : static_cast<double>(paths.size());
    return {{"n_paths", paths.size()},
            {"mean_terminal_price", price / n},
            {"mean_big_jumps", jumps / n},
            {"paths", arr}};
}

void write_json(const std::string& file, nlohmann::json doc, const RunStamp& stamp) {
    doc["config_hash"] = stamp.config_hash;
    doc["master_seed"] = stamp.seed;
    auto out = open_out(file);
    out << doc.dump(2) << '\n';
}

void write_core_csv(const std::string& file, const ValueField& field, const RunStamp& stamp) {
    const Grid& g = field.grid();
    auto out = open_out(file);
    out << csv_header(stamp) << grid_line(g) << "\n";
    out << "t,p,i,s,value\n";
    for (std::size_t node = 0; node < g.nodes(); ++node)
        for (State i : kStates)
            for (int n = 0; n <= g.n_t(); ++n)
                out << g.t(n) << ',' << g.lattice().price(node) << ',' << i.value() << ",0," << field.core(n, node, i)
                    << '\n';
}

std::vector<double> read_core_csv(const std::string& file, const Grid& grid) {
    std::ifstream in(file);
    if (!in) throw DependencyError("missing " + file + ": run solve-pi first");
    std::string line;
    bool grid_ok = false;
    std::vector<double> core(grid.core_size());
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.rfind("# grid", 0) == 0) {
            grid_ok = line == grid_line(grid);
            if (!grid_ok) throw DependencyError(file + " was written for a different grid; rerun solve-pi");
            continue;
        }
        if (line.empty() || line[0] == '#' || line[0] == 't') continue;
        double t, p, s, v;
        int i;
        if (std::sscanf(line.c_str(), "%lf,%lf,%d,%lf,%lf", &t, &p, &i, &s, &v) != 5)
            throw DependencyError(file + ": malformed row '" + line + "'");
        if (rows >= core.size()) throw DependencyError(file + ": too many rows");
        const std::size_t node = rows / (4 * static_cast<std::size_t>(grid.n_t() + 1));
        const int n = static_cast<int>(rows % static_cast<std::size_t>(grid.n_t() + 1));
        const State st(static_cast<int>(rows / static_cast<std::size_t>(grid.n_t() + 1) % 4) + 1);
        if (st.value() != i || std::abs(p - grid.lattice().price(node)) > 1e-9 * p ||
            std::abs(t - grid.t(n)) > 1e-9 * (1.0 + grid.T()))
            throw DependencyError(file + ": row order does not match the grid");
        core[grid.core_index(n, node, st)] = v;
        ++rows;
    }
    if (!grid_ok) throw DependencyError(file + " has no grid line; rerun solve-pi");
    if (rows != core.size()) throw DependencyError(file + ": expected " + std::to_string(core.size()) + " rows");
    return core;
}

void write_field_csv(const std::string& file, const ValueField& field, int stride, const RunStamp& stamp) {
    const Grid& g = field.grid();
    auto out = open_out(file);
    out << csv_header(stamp) << grid_line(g) << "\n";
    out << "t,p,i,s,value\n";
    for (std::size_t node = 0; node < g.nodes(); ++node) {
        for (State i : kStates) {
            const auto col = field.column(node, i);
            for (int n = 0; n <= g.n_t(); ++n) {
                if (n % stride != 0 && n != g.n_t()) continue;
                for (int q = 0; q < g.ages(n); q += stride)
                    out << g.t(n) << ',' << g.lattice().price(node) << ',' << i.value() << ',' << q * g.h() << ','
                        << col[g.wedge_index(n, q)] << '\n';
            }
        }
    }
}

void write_policy_csv(const std::string& file, const DecisionField& field, int stride, const RunStamp& stamp) {
    const ValueField& pi = field.pi();
    const Grid& g = pi.grid();
    auto out = open_out(file);
    out << csv_header(stamp) << grid_line(g) << "\n";
    out << "t,p,i,s,m_plus,m_minus,l_plus,l_minus\n";
    for (std::size_t node = 0; node < g.nodes(); ++node) {
        for (State i : kStates) {
            const auto col = pi.column(node, i);
            for (int n = 0; n <= g.n_t(); ++n) {
                if (n % stride != 0 && n != g.n_t()) continue;
                for (int q = 0; q < g.ages(n); q += stride) {
                    double m[2] = {0.0, 0.0};
                    for (State j : successors(i))
                        m[alpha(j) > 0 ? 0 : 1] = field.m_node(n, node, i, q, j, col[g.wedge_index(n, q)]);
                    out << g.t(n) << ',' << g.lattice().price(node) << ',' << i.value() << ',' << q * g.h() << ','
                        << m[0] << ',' << m[1] << ',' << (m[0] > 0.0 ? 1 : 0) << ',' << (m[1] > 0.0 ? 1 : 0) << '\n';
                }
            }
        }
    }
}

void write_backtest_csv(const std::string& file, const std::vector<BacktestRow>& rows, const RunStamp& stamp) {
    auto out = open_out(file);
    out << csv_header(stamp);
    out << "policy,utility_mean,utility_se,wealth_mean,wealth_se,n_paths,wealth_bound\n";
    for (const auto& r : rows)
        out << r.policy << ',' << r.utility.mean << ',' << r.utility.se << ',' << r.wealth.mean << ',' << r.wealth.se
            << ',' << r.utility.n_paths << ',' << r.bound << '\n';
}

}  // namespace smm
