#pragma once

#include <functional>
#include <string>
#include <vector>

#include "smm/ensemble.hpp"
#include "smm/mark_layout.hpp"
#include "smm/policy.hpp"
#include "smm/simulator.hpp"
#include "smm/source.hpp"
#include "smm/stats.hpp"

namespace smm {

struct StartPoint {
    double t = 0.0;
    double p = 1.0;
    State i{1};
    double s = 0.0;
};

// Composite Simpson for fn on [a, b] with panels no wider than `panel`.
double simpson(const std::function<double(double)>& fn, double a, double b, double panel = 0.05);

// int_{ta}^{tb} w(v, p, i, sa + v - ta) dv on a segment without price moves.
double integrate_segment(const Source& w, double ta, double tb, double p, State i, double sa, double panel = 0.05);

// Mean of g(P_T) + int_t^T w(v, P_{v-}, I_{v-}, S_{v-}) dv over renewal paths
// started at `start`. w may be null. Throws std::invalid_argument for n_paths < 1.
McEstimate estimate_terminal_value(const SemiMarkovKernel& kernel, const std::function<double(double)>& g,
                                   const Source* w, const StartPoint& start, double T, std::size_t n_paths,
                                   std::uint64_t seed, Execution mode = Execution::Parallel);

// (solver - mean) / se. With se = 0 the estimate is exact: returns 0 when the
// values agree and throws NumericalError otherwise.
double z_compare(double solver_value, const McEstimate& mc);

// Smooth function of (p, i, s, x, y) with its age derivative.
struct TestFunction {
    using Fn = std::function<double(double p, State i, double s, double x, long long y)>;
    std::string name;
    Fn value;
    Fn ds;
};

// Generator of (P, I, S, X, Y) under the constant control l applied to psi.
// With l = (0, 0) this is the generator of (P, I, S). small_orders = false
// drops the small market order terms.
double generator(const MarkLayout& layout, const TestFunction& psi, double p, State i, double s, double x, long long y,
                 const Control& l, double epsilon, bool small_orders = true);

struct DynkinSetup {
    MarketState start;
    AgentState agent;
    double horizon = 1.0;
    bool controlled = false;   // false: renewal paths of (P, I, S)
    Control l{1, 1};           // constant control of the controlled run
    double epsilon = 0.0;
    bool small_orders = true;  // false: ablated generator
    std::size_t n_paths = 100000;
    std::uint64_t seed = 0;
    Execution mode = Execution::Parallel;
};

struct DynkinResult {
    std::string name;
    McEstimate estimate;  // of psi(X_t) - psi(X_0) - int_0^t A psi(X_v) dv
    double z = 0.0;
};

DynkinResult dynkin_check(const MarkLayout& layout, const TestFunction& psi, const DynkinSetup& setup);

// Fixed battery: polynomials in p and (x, y) times a bump in s times state weights.
std::vector<TestFunction> dynkin_battery(double p_ref);
// y^2 bump(s): sensitive to the small-order terms of the controlled generator.
TestFunction inventory_square(double bump_width = 2.5);

}  // namespace smm
