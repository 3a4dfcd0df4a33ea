#pragma once

#include <string>

namespace smm {

// Parametric intensity y -> h(y) on [0, inf). Two families are supported:
//   Constant:   h(y) = a
//   Saturating: h(y) = a + b (1 - exp(-c y)),  c > 0
// Both are C^1, bounded by sup() and nondecreasing, so inf over [0, inf) is
// attained at y = 0. The integral has a closed form, which keeps the holding
// time law free of numerical quadrature.
struct HazardSpec {
    enum class Family { Constant, Saturating };

    Family family = Family::Constant;
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;

    static HazardSpec constant(double level);
    static HazardSpec saturating(double base, double gain, double rate);

    // Throws ModelError on negative levels, non-finite values or c <= 0.
    void validate(const std::string& what) const;

    double operator()(double y) const;   // throws DomainError for y < 0
    double integral(double y) const;     // int_0^y h(v) dv
    double derivative(double y) const;
    double sup() const;
    double inf() const;
    bool is_constant() const { return family == Family::Constant || b == 0.0; }
    bool vanishes_identically() const { return a == 0.0 && (family == Family::Constant || b == 0.0); }
};

double hazard_eval(const HazardSpec& spec, double y);

std::string to_string(const HazardSpec& spec);

}  // namespace smm
