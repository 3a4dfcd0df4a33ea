#pragma once

#include <array>

#include "smm/kernel.hpp"

namespace smm {

// exp(tau M) (1, 1) for M = [[a d - b, b (1 - d)], [b (1 + d), -a d - b]],
// a the continuation and b the reversal rate. Component 0 belongs to states
// entered by an up move, component 1 to states entered by a down move.
std::array<double, 2> pi_growth(double a, double b, double delta, double tau);

// Expected terminal price p q_{alpha(i)}(T - t) under constant hazards.
// Throws ModelError for age-dependent hazards.
double pi_constant_hazards(const SemiMarkovKernel& kernel, double T, double t, double p, State i);

}  // namespace smm
