#pragma once

#include <array>

#include "smm/hazard.hpp"
#include "smm/state_space.hpp"

namespace smm {

// Semi-Markov kernel of the price-direction process.
//
// The total hazard h = h_plus + h_minus drives the holding time law
//   F(y) = 1 - exp(-int_0^y h),   f(y) = h(y) (1 - F(y)),
// which does not depend on the current state, and the embedded chain jumps
// i -> j (j not equivalent to i) with probability p_ij(y) = h_ij(y) / h(y),
// where h_ij = h_{sign(alpha(i+j))}. With this indexing h_plus is the hazard of
// a continuation (same direction as the last move) and h_minus of a reversal.
//
// Immutable after construction.
class SemiMarkovKernel {
public:
    // Throws ModelError unless both hazards are admissible:
    //   (A1)/(A2) hold by construction of the families,
    //   (A3) each hazard must not vanish identically,
    //   (A4) h(y) > 0 for every y, i.e. h_plus(0) + h_minus(0) > 0,
    // and delta is in [0, 1) so that p (1 - delta) > 0.
    SemiMarkovKernel(HazardSpec continuation, HazardSpec reversal, double delta);

    const HazardSpec& hazard(Side nu) const { return hazards_[side_index(nu)]; }
    double delta() const { return delta_; }
    // Uniform bound of both hazards.
    double c1() const { return c1_; }
    bool constant_hazards() const { return hazards_[0].is_constant() && hazards_[1].is_constant(); }

    double hazard_at(Side nu, double y) const { return hazard(nu)(y); }
    double total_hazard(double y) const;
    double cumulative_hazard(double y) const;  // int_0^y h
    double survival(double y) const;           // 1 - F(y)
    double cdf(double y) const;
    double density(double y) const;
    // P(holding time > s0 + w | holding time > s0)
    double conditional_survival(double s0, double w) const;

    double directed_hazard(State i, State j, double y) const;  // h_ij(y)
    double transition_prob(State i, State j, double y) const;  // p_ij(y)

    // Price multiplier of a jump into j.
    double jump_factor(State j) const { return 1.0 + delta_ * alpha(j); }

private:
    std::array<HazardSpec, 2> hazards_;
    double delta_;
    double c1_;
};

}  // namespace smm
