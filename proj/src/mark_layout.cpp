#include "smm/mark_layout.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace smm {

SizeLaw::SizeLaw(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw ModelError("size law needs at least one mass point");
    for (double q : probs_)
        if (!std::isfinite(q) || q < 0.0) throw ModelError("size law masses must be finite and >= 0");
    const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) throw ModelError("size law masses sum to " + std::to_string(total) + ", not 1");
}

double SizeLaw::mean() const {
    double m = 0.0;
    for (std::size_t k = 0; k < probs_.size(); ++k) m += static_cast<double>(k) * probs_[k];
    return m;
}

double SizeLaw::second_moment() const {
    double m = 0.0;
    for (std::size_t k = 0; k < probs_.size(); ++k) m += static_cast<double>(k * k) * probs_[k];
    return m;
}

MarkLayout::MarkLayout(SemiMarkovKernel kernel, HazardSpec order_rate_plus, HazardSpec order_rate_minus,
                       SizeLaw size_plus, SizeLaw size_minus)
    : kernel_(std::move(kernel)), rates_{order_rate_plus, order_rate_minus}, sizes_{std::move(size_plus), std::move(size_minus)} {
    rates_[0].validate("lambda_plus");
    rates_[1].validate("lambda_minus");
    if (sizes_[0].max_size() != sizes_[1].max_size())
        throw ModelError("size laws of both sides must live on the same {0..K}");
    if (sizes_[0].max_size() < 1) throw ModelError("maximal order size K must be >= 1");
    c2_ = std::max(rates_[0].sup(), rates_[1].sup());
}

double MarkLayout::total_mass(double s) const {
    return kernel_.total_hazard(s) + rates_[0](s) + rates_[1](s);
}

MarkEvent MarkLayout::classify(State i, double s, double z) const {
    if (z < 0.0) return MarkEvent::none();
    double hi = kernel_.hazard_at(Side::Plus, s);
    if (z < hi) return MarkEvent::big(continuation_successor(i));
    hi += kernel_.hazard_at(Side::Minus, s);
    if (z < hi) return MarkEvent::big(reversal_successor(i));
    for (Side nu : kSides) {
        const double rate = order_rate(nu)(s);
        const SizeLaw& law = size_law(nu);
        for (int k = 0; k <= law.max_size(); ++k) {
            hi += rate * law.prob(k);
            if (z < hi) return MarkEvent::small(nu, k);
        }
    }
    return MarkEvent::none();
}

std::vector<MarkInterval> MarkLayout::intervals(double s) const {
    std::vector<MarkInterval> out;
    double lo = 0.0;
    for (Side nu : kSides) {
        const double len = kernel_.hazard_at(nu, s);
        out.push_back({MarkEvent::Kind::BigJump, nu, -1, lo, lo + len});
        lo += len;
    }
    for (Side nu : kSides) {
        const double rate = order_rate(nu)(s);
        for (int k = 0; k <= size_law(nu).max_size(); ++k) {
            const double len = rate * size_law(nu).prob(k);
            out.push_back({MarkEvent::Kind::SmallOrder, nu, k, lo, lo + len});
            lo += len;
        }
    }
    return out;
}

}  // namespace smm
