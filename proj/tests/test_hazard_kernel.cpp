#include <doctest.h>

#include <cmath>
#include <map>
#include <tuple>

#include "helpers.hpp"
#include "smm/errors.hpp"
#include "smm/kernel.hpp"
#include "smm/mark_layout.hpp"

using namespace smm;
using doctest::Approx;

TEST_CASE("hazard families") {
    CHECK(hazard_eval(HazardSpec::constant(1.0), 5.0) == 1.0);
    CHECK(hazard_eval(HazardSpec::saturating(0.0, 2.0, 1.0), 0.0) == 0.0);
    CHECK(hazard_eval(HazardSpec::saturating(0.5, 2.0, 1.0), 1.0) == Approx(1.76424).epsilon(1e-5));

    const HazardSpec sat = HazardSpec::saturating(0.3, 1.2, 0.7);
    CHECK(sat.sup() == Approx(1.5));
    CHECK(sat.inf() == Approx(0.3));
    // integral against a fine trapezoid sum
    double acc = 0.0;
    const int n = 20000;
    for (int k = 0; k < n; ++k) acc += 0.5 * (sat(3.0 * k / n) + sat(3.0 * (k + 1) / n)) * 3.0 / n;
    CHECK(sat.integral(3.0) == Approx(acc).epsilon(1e-8));
    CHECK(sat.derivative(0.4) == Approx((sat(0.4 + 1e-6) - sat(0.4 - 1e-6)) / 2e-6).epsilon(1e-6));
}

TEST_CASE("hazard domain and parameter errors") {
    CHECK_THROWS_AS(HazardSpec::constant(1.0)(-0.1), DomainError);
    CHECK_THROWS_AS(HazardSpec::constant(-1.0), ModelError);
    CHECK_THROWS_AS(HazardSpec::saturating(0.1, -1.0, 1.0), ModelError);
    CHECK_THROWS_AS(HazardSpec::saturating(0.1, 1.0, 0.0), ModelError);
}

TEST_CASE("holding time law") {
    const auto unit = test::constant_kernel(0.5, 0.5);
    CHECK(unit.cdf(1.0) == Approx(0.632121).epsilon(1e-6));
    CHECK(unit.cdf(0.0) == 0.0);
    CHECK(unit.density(0.0) == 1.0);
    CHECK(unit.density(1.0) == Approx(0.367879).epsilon(1e-6));
    CHECK(test::constant_kernel(0.6, 0.4).cdf(2.0) == Approx(0.864665).epsilon(1e-6));

    // h_minus = 0 would violate (A3); a small constant reversal hazard is added instead
    const SemiMarkovKernel sat(HazardSpec::saturating(0.5, 2.0, 1.0), HazardSpec::constant(0.1), 0.01);
    CHECK(sat.density(1.0) == Approx((1.76424 + 0.1) * (1.0 - sat.cdf(1.0))).epsilon(1e-5));
    CHECK_THROWS_AS(SemiMarkovKernel(HazardSpec::saturating(0.5, 2.0, 1.0), HazardSpec::constant(0.0), 0.01),
                    ModelError);
}

TEST_CASE("transition probabilities") {
    const auto sym = test::constant_kernel(1.0, 1.0);
    for (State i : kStates)
        for (State j : successors(i))
            for (double y : {0.0, 0.3, 7.0}) CHECK(sym.transition_prob(i, j, y) == Approx(0.5));

    const auto k = test::constant_kernel(0.6, 0.4);
    CHECK(k.transition_prob(State(2), State(4), 1.3) == Approx(0.6));  // continuation
    CHECK(k.transition_prob(State(1), State(4), 1.3) == Approx(0.4));  // reversal
    CHECK_THROWS_AS(k.transition_prob(State(1), State(2), 0.0), InvalidTransition);
    CHECK_THROWS_AS(k.directed_hazard(State(3), State(3), 0.0), InvalidTransition);
}

TEST_CASE("executed side and hazard for every admissible pair") {
    // (i, j, executed side): the executed side is the direction of the new move
    // and continuations (same direction twice) use h_plus.
    struct Row {
        int i, j;
        Side executed;
    };
    const Row rows[] = {{1, 3, Side::Minus}, {1, 4, Side::Plus}, {2, 3, Side::Minus}, {2, 4, Side::Plus},
                        {3, 1, Side::Minus}, {3, 2, Side::Plus}, {4, 1, Side::Minus}, {4, 2, Side::Plus}};
    for (const Row& r : rows) {
        const State i(r.i), j(r.j);
        CAPTURE(r.i);
        CAPTURE(r.j);
        CHECK(MarkEvent::big(j).side == r.executed);
        const bool continuation = alpha(i) == alpha(j);
        CHECK(transition_side(i, j) == (continuation ? Side::Plus : Side::Minus));
    }
}

TEST_CASE("density identity and normalisation on all presets") {
    for (const char* name : {"symmetric", "asymmetric", "saturating"}) {
        const SemiMarkovKernel k = test::preset(name).kernel();
        double prev = -1.0;
        for (int n = 0; n < 200; ++n) {
            const double y = 10.0 * n / 199.0;
            const double F = k.cdf(y);
            CHECK(F > prev);
            CHECK(F < 1.0);
            prev = F;
            for (State i : kStates) {
                double sum = 0.0;
                for (State j : successors(i)) {
                    sum += k.transition_prob(i, j, y);
                    CHECK(std::abs(k.density(y) * k.transition_prob(i, j, y) / k.survival(y) -
                                   k.directed_hazard(i, j, y)) <= 1e-12);
                }
                CHECK(std::abs(sum - 1.0) <= 1e-12);
            }
        }
    }
}

TEST_CASE("kernel admissibility") {
    CHECK_THROWS_WITH_AS(test::constant_kernel(0.0, 0.0), doctest::Contains("(A3)"), ModelError);
    // both hazards vanish at age 0 only
    try {
        SemiMarkovKernel(HazardSpec::saturating(0.0, 1.0, 1.0), HazardSpec::saturating(0.0, 1.0, 1.0), 0.01);
        FAIL("expected ModelError");
    } catch (const ModelError& e) {
        CHECK(std::string(e.what()).find("(A4)") != std::string::npos);
    }
    CHECK_THROWS_AS(test::constant_kernel(1.0, 1.0, 1.0), ModelError);
    CHECK_THROWS_AS(test::constant_kernel(1.0, 1.0, -0.1), ModelError);
}

namespace {

MarkLayout sample_layout() {
    const SemiMarkovKernel k(HazardSpec::constant(1.0), HazardSpec::saturating(0.2, 0.5, 1.5), 0.01);
    return MarkLayout(k, HazardSpec::saturating(0.5, 0.5, 1.0), HazardSpec::constant(0.9), SizeLaw({0.2, 0.5, 0.3}),
                      SizeLaw({0.25, 0.5, 0.25}));
}

}  // namespace

TEST_CASE("mark classification examples") {
    const auto layout = sample_layout();
    CHECK(layout.classify(State(2), 0.7, 0.5) == MarkEvent::big(State(4)));
    CHECK(layout.classify(State(2), 0.7, layout.total_mass(0.7) + 0.1).kind == MarkEvent::Kind::NoEvent);
    CHECK(layout.classify(State(2), 0.7, layout.mark_bound() * 0.999).kind == MarkEvent::Kind::NoEvent);
    for (const auto& iv : layout.intervals(0.7))
        if (iv.kind == MarkEvent::Kind::SmallOrder && iv.side == Side::Plus && iv.size == 2)
            CHECK(layout.classify(State(2), 0.7, 0.5 * (iv.lo + iv.hi)) == MarkEvent::small(Side::Plus, 2));
}

TEST_CASE("mark classification partitions the axis") {
    const auto layout = sample_layout();
    for (double s : {0.0, 0.4, 3.0}) {
        for (State i : kStates) {
            // interval lengths recovered by a fine sweep of z
            const int n = 400000;
            const double bound = layout.mark_bound();
            const double dz = bound / n;
            std::map<std::tuple<int, int, int, int>, double> length;
            for (int k = 0; k < n; ++k) {
                const MarkEvent ev = layout.classify(i, s, (k + 0.5) * dz);
                length[{static_cast<int>(ev.kind), ev.target.value(), sign(ev.side), ev.size}] += dz;
            }
            const SemiMarkovKernel& kern = layout.kernel();
            for (State j : successors(i)) {
                const MarkEvent ev = MarkEvent::big(j);
                CHECK(length[{static_cast<int>(ev.kind), j.value(), sign(ev.side), 0}] ==
                      Approx(kern.directed_hazard(i, j, s)).epsilon(2e-5));
            }
            for (Side nu : kSides)
                for (int k = 0; k <= layout.max_size(); ++k) {
                    const MarkEvent ev = MarkEvent::small(nu, k);
                    CHECK(length[{static_cast<int>(ev.kind), 1, sign(nu), k}] ==
                          Approx(layout.order_rate(nu)(s) * layout.size_law(nu).prob(k)).epsilon(2e-5));
                }
        }
        // the explicit interval table is exact
        double prev = 0.0;
        for (const auto& iv : layout.intervals(s)) {
            CHECK(iv.lo == prev);
            CHECK(iv.hi >= iv.lo);
            prev = iv.hi;
        }
        CHECK(std::abs(prev - layout.total_mass(s)) <= 1e-9);
        CHECK(prev <= layout.mark_bound());
    }
}

TEST_CASE("size laws") {
    CHECK_THROWS_AS(SizeLaw({0.2, 0.5, 0.2}), ModelError);
    CHECK_THROWS_AS(SizeLaw({-0.1, 1.1}), ModelError);
    const SizeLaw law({0.2, 0.5, 0.3});
    CHECK(law.mean() == Approx(1.1));
    CHECK(law.second_moment() == Approx(1.7));
    const auto k = test::constant_kernel(1.0, 1.0);
    CHECK_THROWS_AS(MarkLayout(k, HazardSpec::constant(1.0), HazardSpec::constant(1.0), SizeLaw({0.5, 0.5}),
                               SizeLaw({0.2, 0.5, 0.3})),
                    ModelError);
}
