#include "smm/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "smm/errors.hpp"

namespace smm {

PriceLattice::PriceLattice(double p0, double delta, int n_max) : p0_(p0), delta_(delta), n_max_(n_max) {
    if (!(p0 > 0.0)) throw ModelError("initial price must be positive");
    if (n_max < 0) throw ModelError("lattice depth must be >= 0");
    for (int n = 0; n <= n_max; ++n) {
        for (int b = 0; b <= n; ++b) {
            const int a = n - b;
            coords_.emplace_back(a, b);
            prices_.push_back(p0 * std::pow(1.0 + delta, a) * std::pow(1.0 - delta, b));
        }
    }
    sorted_.reserve(prices_.size());
    for (std::size_t k = 0; k < prices_.size(); ++k) sorted_.emplace_back(prices_[k], k);
    std::sort(sorted_.begin(), sorted_.end());
}

std::size_t PriceLattice::successor(std::size_t k, int dir) const {
    const auto [a, b] = coords_[k];
    if (a + b >= n_max_) return npos;
    return dir > 0 ? index(a + 1, b) : index(a, b + 1);
}

std::optional<std::size_t> PriceLattice::locate(double p) const {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), std::make_pair(p, std::size_t{0}));
    std::optional<std::size_t> best;
    double best_err = 1e-9;
    for (auto cand : {it, it == sorted_.begin() ? it : std::prev(it)}) {
        if (cand == sorted_.end()) continue;
        const double err = std::abs(cand->first - p) / p;
        if (err <= best_err) {
            best_err = err;
            best = cand->second;
        }
    }
    return best;
}

}  // namespace smm
