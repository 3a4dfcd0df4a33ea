#pragma once

#include <array>
#include <vector>

#include "smm/hazard.hpp"
#include "smm/kernel.hpp"
#include "smm/state_space.hpp"

namespace smm {

// Categorical law of executed size on {0, 1, ..., K}.
class SizeLaw {
public:
    SizeLaw() = default;
    // Throws ModelError on negative entries or if the masses do not sum to 1.
    explicit SizeLaw(std::vector<double> probs);

    int max_size() const { return static_cast<int>(probs_.size()) - 1; }
    double prob(int k) const { return probs_[static_cast<std::size_t>(k)]; }
    const std::vector<double>& probs() const { return probs_; }
    double mean() const;
    double second_moment() const;

private:
    std::vector<double> probs_{1.0};
};

struct MarkEvent {
    enum class Kind { NoEvent, BigJump, SmallOrder };

    Kind kind = Kind::NoEvent;
    State target{1};          // BigJump: next state
    Side side = Side::Plus;   // SmallOrder: book side hit
    int size = 0;             // SmallOrder: k

    static MarkEvent none() { return {}; }
    static MarkEvent big(State j) { return {Kind::BigJump, j, alpha_bar(j), 0}; }
    static MarkEvent small(Side nu, int k) { return {Kind::SmallOrder, State(1), nu, k}; }

    friend bool operator==(const MarkEvent&, const MarkEvent&) = default;
};

// One labelled interval [lo, hi) of the mark axis at a fixed age.
struct MarkInterval {
    MarkEvent::Kind kind;
    Side side;
    int size;  // -1 for the big-order intervals
    double lo;
    double hi;
};

// Disjoint right-open intervals of the mark axis at age s, laid out from 0 in
// the order [H_plus | H_minus | Lambda_{+,0..K} | Lambda_{-,0..K}]. A Poisson
// point whose mark falls in H_nu moves the price; one in Lambda_{nu,k} is a
// small market order of size k on side nu; anything beyond the total mass is
// no event.
class MarkLayout {
public:
    MarkLayout(SemiMarkovKernel kernel, HazardSpec order_rate_plus, HazardSpec order_rate_minus, SizeLaw size_plus,
               SizeLaw size_minus);

    const SemiMarkovKernel& kernel() const { return kernel_; }
    const HazardSpec& order_rate(Side nu) const { return rates_[side_index(nu)]; }
    const SizeLaw& size_law(Side nu) const { return sizes_[side_index(nu)]; }
    int max_size() const { return sizes_[0].max_size(); }  // K

    double c2() const { return c2_; }
    // Length of the mark window [0, 2 c1 + 2 c2] used for thinning.
    double mark_bound() const { return 2.0 * kernel_.c1() + 2.0 * c2_; }
    double total_mass(double s) const;

    MarkEvent classify(State i, double s, double z) const;
    std::vector<MarkInterval> intervals(double s) const;

private:
    SemiMarkovKernel kernel_;
    std::array<HazardSpec, 2> rates_;
    std::array<SizeLaw, 2> sizes_;
    double c2_;
};

}  // namespace smm
