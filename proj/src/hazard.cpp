#include "smm/hazard.hpp"

#include <cmath>
#include <sstream>

#include "smm/errors.hpp"

namespace smm {

HazardSpec HazardSpec::constant(double level) {
    HazardSpec h;
    h.family = Family::Constant;
    h.a = level;
    h.validate("constant hazard");
    return h;
}

HazardSpec HazardSpec::saturating(double base, double gain, double rate) {
    HazardSpec h;
    h.family = Family::Saturating;
    h.a = base;
    h.b = gain;
    h.c = rate;
    h.validate("saturating hazard");
    return h;
}

void HazardSpec::validate(const std::string& what) const {
    if (!std::isfinite(a) || a < 0.0) throw ModelError(what + ": level a must be finite and >= 0");
    if (family == Family::Saturating) {
        if (!std::isfinite(b) || b < 0.0) throw ModelError(what + ": gain b must be finite and >= 0");
        if (!std::isfinite(c) || c <= 0.0) throw ModelError(what + ": rate c must be finite and > 0");
    }
}

double HazardSpec::operator()(double y) const {
    if (!(y >= 0.0)) throw DomainError("hazard evaluated at negative age");
    if (family == Family::Constant) return a;
    return a - b * std::expm1(-c * y);
}

double HazardSpec::integral(double y) const {
    if (!(y >= 0.0)) throw DomainError("hazard integral over negative age");
    if (family == Family::Constant) return a * y;
    // b * (y - (1 - e^{-cy}) / c)
    return a * y + b * (y + std::expm1(-c * y) / c);
}

double HazardSpec::derivative(double y) const {
    if (family == Family::Constant) return 0.0;
    return b * c * std::exp(-c * y);
}

double HazardSpec::sup() const { return family == Family::Constant ? a : a + b; }

double HazardSpec::inf() const { return a; }

double hazard_eval(const HazardSpec& spec, double y) { return spec(y); }

std::string to_string(const HazardSpec& spec) {
    std::ostringstream os;
    if (spec.family == HazardSpec::Family::Constant)
        os << "Constant(" << spec.a << ")";
    else
        os << "Saturating(" << spec.a << ", " << spec.b << ", " << spec.c << ")";
    return os.str();
}

}  // namespace smm
