#include "smm/policy.hpp"

#include <bit>

#include "smm/rng.hpp"

namespace smm {

Control Policy::operator()(double t, double p, State i, double s) const {
    Control l = rule_(t, p, i, s);
    l.plus = l.plus != 0 ? 1 : 0;
    l.minus = l.minus != 0 ? 1 : 0;
    return l;
}

Policy Policy::hold() {
    return {"Hold", [](double, double, State, double) { return Control{0, 0}; }};
}

Policy Policy::always_quote() {
    return {"AlwaysQuote", [](double, double, State, double) { return Control{1, 1}; }};
}

Policy Policy::ask_only() {
    return {"AskOnly", [](double, double, State, double) { return Control{1, 0}; }};
}

Policy Policy::bid_only() {
    return {"BidOnly", [](double, double, State, double) { return Control{0, 1}; }};
}

Policy Policy::constant(Control l) {
    return {"Constant(" + std::to_string(l.plus) + "," + std::to_string(l.minus) + ")",
            [l](double, double, State, double) { return l; }};
}

Policy Policy::random(double q, std::uint64_t seed) {
    return {"Random(" + std::to_string(q).substr(0, 4) + ")", [q, seed](double t, double p, State i, double s) {
                std::uint64_t h = mix64(seed);
                h = mix64(h ^ std::bit_cast<std::uint64_t>(t));
                h = mix64(h ^ std::bit_cast<std::uint64_t>(p));
                h = mix64(h ^ static_cast<std::uint64_t>(i.value()));
                h = mix64(h ^ std::bit_cast<std::uint64_t>(s));
                const double u1 = static_cast<double>(h >> 11) * 0x1.0p-53;
                const double u2 = static_cast<double>(mix64(h) >> 11) * 0x1.0p-53;
                return Control{u1 < q ? 1 : 0, u2 < q ? 1 : 0};
            }};
}

}  // namespace smm
