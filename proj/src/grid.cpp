#include "smm/grid.hpp"

#include <boost/math/distributions/poisson.hpp>
#include <cmath>

namespace smm {

int lattice_depth(double c1, double T, double tail_tol) {
    const double mean = 2.0 * c1 * T;
    if (mean <= 0.0) return 0;
    boost::math::poisson_distribution<double> law(mean);
    int n = 0;
    while (boost::math::cdf(boost::math::complement(law, static_cast<double>(n))) >= tail_tol) ++n;
    return n;
}

std::vector<double> composite_weights(int m) {
    std::vector<double> c(static_cast<std::size_t>(m + 1), 0.0);
    int start = 0;
    for (int rem = m; rem > 0;) {
        const int w = panel_width(rem);
        const auto& pw = panel_weights(w);
        for (int r = 0; r <= w; ++r) c[static_cast<std::size_t>(start + r)] += pw[static_cast<std::size_t>(r)];
        start += w;
        rem -= w;
    }
    return c;
}

const std::vector<double>& panel_weights(int width) {
    static const std::vector<double> none{};
    static const std::vector<double> trap{0.5, 0.5};
    static const std::vector<double> simpson{1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0};
    static const std::vector<double> three_eighths{3.0 / 8.0, 9.0 / 8.0, 9.0 / 8.0, 3.0 / 8.0};
    switch (width) {
        case 1: return trap;
        case 2: return simpson;
        case 3: return three_eighths;
        default: return none;
    }
}

namespace {

const GridSpec& checked(const GridSpec& spec, double T, double s0) {
    if (spec.n_t < 1) throw ModelError("n_t must be >= 1");
    if (!(T > 0.0)) throw ModelError("horizon T must be positive");
    if (!(s0 >= 0.0)) throw ModelError("initial age must be >= 0");
    if (!(spec.tol_fp > 0.0)) throw ModelError("tol_fp must be positive");
    if (!(spec.tail_tol > 0.0 && spec.tail_tol < 1.0)) throw ModelError("tail_tol must lie in (0,1)");
    return spec;
}

}  // namespace

Grid::Grid(double p0, double delta, double T, double s0, const GridSpec& spec, double c1)
    : spec_(checked(spec, T, s0)), T_(T), h_(T / spec.n_t), s0_(s0),
      q0_(static_cast<int>(std::ceil(s0 / (T / spec.n_t) - 1e-9))),
      lattice_(p0, delta, spec.n_max >= 0 ? spec.n_max : lattice_depth(c1, T, spec.tail_tol)) {
    if (q0_ < 0) q0_ = 0;
    spec_.n_max = lattice_.n_max();
}

}  // namespace smm
