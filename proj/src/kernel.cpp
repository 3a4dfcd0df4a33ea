#include "smm/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace smm {

SemiMarkovKernel::SemiMarkovKernel(HazardSpec continuation, HazardSpec reversal, double delta)
    : hazards_{continuation, reversal}, delta_(delta) {
    continuation.validate("h_plus");
    reversal.validate("h_minus");
    if (continuation.vanishes_identically())
        throw ModelError("h_plus vanishes identically, its integral cannot diverge (A3)");
    if (reversal.vanishes_identically())
        throw ModelError("h_minus vanishes identically, its integral cannot diverge (A3)");
    // Both families are nondecreasing, so the infimum of h is h(0).
    if (!(continuation.inf() + reversal.inf() > 0.0))
        throw ModelError("total hazard h = h_plus + h_minus must be positive at every age; h(0) = 0 (A4)");
    if (!std::isfinite(delta) || delta < 0.0 || delta >= 1.0)
        throw ModelError("relative tick delta must lie in [0, 1)");
    c1_ = std::max(continuation.sup(), reversal.sup());
}

double SemiMarkovKernel::total_hazard(double y) const { return hazards_[0](y) + hazards_[1](y); }

double SemiMarkovKernel::cumulative_hazard(double y) const {
    return hazards_[0].integral(y) + hazards_[1].integral(y);
}

double SemiMarkovKernel::survival(double y) const { return std::exp(-cumulative_hazard(y)); }

double SemiMarkovKernel::cdf(double y) const { return -std::expm1(-cumulative_hazard(y)); }

double SemiMarkovKernel::density(double y) const { return total_hazard(y) * survival(y); }

double SemiMarkovKernel::conditional_survival(double s0, double w) const {
    return std::exp(-(cumulative_hazard(s0 + w) - cumulative_hazard(s0)));
}

double SemiMarkovKernel::directed_hazard(State i, State j, double y) const {
    if (equivalent(i, j))
        throw InvalidTransition("no transition between equivalent states " + std::to_string(i.value()) + " and " +
                                std::to_string(j.value()));
    return hazard(transition_side(i, j))(y);
}

double SemiMarkovKernel::transition_prob(State i, State j, double y) const {
    const double hij = directed_hazard(i, j, y);
    return hij / total_hazard(y);
}

}  // namespace smm
