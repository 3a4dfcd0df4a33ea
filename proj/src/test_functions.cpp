#include <cmath>

#include "smm/mc_oracle.hpp"

namespace smm {

namespace {

// (1 - (s/c)^2)^3 on [0, c), zero beyond: C^2 with compact support in s.
double bump(double s, double c) {
    if (s >= c) return 0.0;
    const double u = 1.0 - (s / c) * (s / c);
    return u * u * u;
}

double bump_ds(double s, double c) {
    if (s >= c) return 0.0;
    const double u = 1.0 - (s / c) * (s / c);
    return -6.0 * s / (c * c) * u * u;
}

}  // namespace

std::vector<TestFunction> dynkin_battery(double p_ref) {
    const double c = 2.5;
    std::vector<TestFunction> out;
    out.push_back({"bump",
                   [c](double, State, double s, double, long long) { return bump(s, c); },
                   [c](double, State, double s, double, long long) { return bump_ds(s, c); }});
    out.push_back({"price_bump",
                   [c, p_ref](double p, State, double s, double, long long) { return p / p_ref * bump(s, c); },
                   [c, p_ref](double p, State, double s, double, long long) { return p / p_ref * bump_ds(s, c); }});
    auto weight = [](State i) { return i.value() == 1 ? 1.0 : i.value() == 4 ? 2.0 : i.value() == 2 ? -0.5 : 0.0; };
    out.push_back({"state_price_square",
                   [c, p_ref, weight](double p, State i, double s, double, long long) {
                       const double u = p / p_ref;
                       return weight(i) * u * u * bump(s, c);
                   },
                   [c, p_ref, weight](double p, State i, double s, double, long long) {
                       const double u = p / p_ref;
                       return weight(i) * u * u * bump_ds(s, c);
                   }});
    out.push_back({"wealth",
                   [c, p_ref](double p, State i, double s, double x, long long y) {
                       return (x / p_ref + static_cast<double>(y) * p / p_ref) * (1.0 + 0.5 * alpha(i)) * bump(s, c);
                   },
                   [c, p_ref](double p, State i, double s, double x, long long y) {
                       return (x / p_ref + static_cast<double>(y) * p / p_ref) * (1.0 + 0.5 * alpha(i)) * bump_ds(s, c);
                   }});
    out.push_back({"inventory_price",
                   [c, p_ref](double p, State i, double s, double, long long y) {
                       const double yy = static_cast<double>(y);
                       return (1.0 + 0.3 * yy + 0.05 * yy * yy) * (p / p_ref) * (i.value() <= 2 ? 1.0 : 0.5) *
                              bump(s, c);
                   },
                   [c, p_ref](double p, State i, double s, double, long long y) {
                       const double yy = static_cast<double>(y);
                       return (1.0 + 0.3 * yy + 0.05 * yy * yy) * (p / p_ref) * (i.value() <= 2 ? 1.0 : 0.5) *
                              bump_ds(s, c);
                   }});
    return out;
}

TestFunction inventory_square(double bump_width) {
    const double c = bump_width;
    return {"inventory_square",
            [c](double, State, double s, double, long long y) { return static_cast<double>(y * y) * bump(s, c); },
            [c](double, State, double s, double, long long y) { return static_cast<double>(y * y) * bump_ds(s, c); }};
}

}  // namespace smm
