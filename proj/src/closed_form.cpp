#include "smm/closed_form.hpp"

#include <cmath>

#include "smm/errors.hpp"

namespace smm {

std::array<double, 2> pi_growth(double a, double b, double delta, double tau) {
    const double m11 = (a * delta - b) * tau;
    const double m12 = b * (1.0 - delta) * tau;
    const double m21 = b * (1.0 + delta) * tau;
    const double m22 = (-a * delta - b) * tau;
    // exp(M) = e^{tr/2} (cosh(mu) I + sinh(mu)/mu (M - tr/2 I)),  mu^2 = -det(M - tr/2 I)
    const double half_tr = 0.5 * (m11 + m22);
    const double d = 0.5 * (m11 - m22);
    const double mu = std::sqrt(d * d + m12 * m21);
    const double ch = std::cosh(mu);
    const double sh = mu > 1e-8 ? std::sinh(mu) / mu : 1.0 + mu * mu / 6.0;
    const double e = std::exp(half_tr);
    const double e11 = e * (ch + sh * d);
    const double e22 = e * (ch - sh * d);
    const double e12 = e * sh * m12;
    const double e21 = e * sh * m21;
    return {e11 + e12, e21 + e22};
}

double pi_constant_hazards(const SemiMarkovKernel& kernel, double T, double t, double p, State i) {
    if (!kernel.constant_hazards()) throw ModelError("closed form needs constant hazards");
    const auto q = pi_growth(kernel.hazard(Side::Plus).a, kernel.hazard(Side::Minus).a, kernel.delta(), T - t);
    return p * q[alpha(i) > 0 ? 0 : 1];
}

}  // namespace smm
