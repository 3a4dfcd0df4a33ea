#include "smm/stats.hpp"

#include <algorithm>
#include <cmath>

namespace smm {

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

McEstimate summarize(std::span<const double> xs, std::uint64_t seed) {
    McEstimate est;
    est.n_paths = xs.size();
    est.seed = seed;
    if (xs.empty()) return est;
    const double n = static_cast<double>(xs.size());
    est.mean = pairwise_sum(xs) / n;
    if (xs.size() < 2) return est;
    std::vector<double> dev(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) dev[k] = (xs[k] - est.mean) * (xs[k] - est.mean);
    const double var = pairwise_sum(dev) / (n - 1.0);
    est.se = std::sqrt(var / n);
    return est;
}

double kolmogorov_q(double x) {
    if (x <= 0.0) return 1.0;
    if (x < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

// Stephens' small-sample correction of the asymptotic distribution.
double ks_p(double d, double ne) {
    const double rn = std::sqrt(ne);
    return kolmogorov_q((rn + 0.12 + 0.11 / rn) * d);
}

}  // namespace

KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf) {
    KsResult r;
    if (sample.empty()) return r;
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t k = 0; k < sample.size(); ++k) {
        const double f = cdf(sample[k]);
        d = std::max({d, (static_cast<double>(k) + 1.0) / n - f, f - static_cast<double>(k) / n});
    }
    r.statistic = d;
    r.p_value = ks_p(d, n);
    return r;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    KsResult r;
    if (a.empty() || b.empty()) return r;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < a.size() && ib < b.size()) {
        const double x = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] <= x) ++ia;
        while (ib < b.size() && b[ib] <= x) ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    r.statistic = d;
    r.p_value = ks_p(d, na * nb / (na + nb));
    return r;
}

}  // namespace smm
