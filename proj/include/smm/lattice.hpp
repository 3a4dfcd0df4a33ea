#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace smm {

// Multiplicative price lattice {P0 (1+delta)^a (1-delta)^b : a + b <= N}.
// Node (a, b) with n = a + b is stored at n(n+1)/2 + b.
class PriceLattice {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    PriceLattice(double p0, double delta, int n_max);

    int n_max() const { return n_max_; }
    double p0() const { return p0_; }
    double delta() const { return delta_; }
    std::size_t size() const { return prices_.size(); }

    static std::size_t index(int a, int b) {
        const auto n = static_cast<std::size_t>(a + b);
        return n * (n + 1) / 2 + static_cast<std::size_t>(b);
    }
    int up_moves(std::size_t k) const { return coords_[k].first; }
    int down_moves(std::size_t k) const { return coords_[k].second; }
    int level(std::size_t k) const { return coords_[k].first + coords_[k].second; }
    double price(std::size_t k) const { return prices_[k]; }

    // Node reached by one move in direction dir (+1 up, -1 down); npos past N.
    std::size_t successor(std::size_t k, int dir) const;

    // Node whose price equals p to relative precision 1e-9.
    std::optional<std::size_t> locate(double p) const;

private:
    double p0_;
    double delta_;
    int n_max_;
    std::vector<double> prices_;
    std::vector<std::pair<int, int>> coords_;
    std::vector<std::pair<double, std::size_t>> sorted_;
};

}  // namespace smm
