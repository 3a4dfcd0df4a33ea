#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace smm {

struct McEstimate {
    double mean = 0.0;
    double se = 0.0;  // sample std / sqrt(n)
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
};

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Pairwise summation with a fixed split point, so the rounding pattern
// depends only on the length of the input.
double pairwise_sum(std::span<const double> xs);

// Mean and standard error of i.i.d. samples. SE is 0 for n < 2.
McEstimate summarize(std::span<const double> xs, std::uint64_t seed = 0);

// P(sup |B| > x) for the Brownian bridge, i.e. the Kolmogorov tail.
double kolmogorov_q(double x);

// One-sample KS against a continuous CDF.
KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);

// Two-sample KS.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace smm
