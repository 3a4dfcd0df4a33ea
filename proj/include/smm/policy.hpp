#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "smm/state_space.hpp"

namespace smm {

// Quoting decision (l_plus, l_minus): 1 keeps a limit order of size K on the
// ask (plus) or bid (minus) side.
struct Control {
    int plus = 0;
    int minus = 0;

    int on(Side nu) const { return nu == Side::Plus ? plus : minus; }
    friend bool operator==(const Control&, const Control&) = default;
};

// Deterministic feedback rule (t, p, i, s) -> Control. Simulators call it with
// left limits of the state just before each event.
class Policy {
public:
    using Rule = std::function<Control(double t, double p, State i, double s)>;

    Policy(std::string name, Rule rule) : name_(std::move(name)), rule_(std::move(rule)) {}

    const std::string& name() const { return name_; }
    Control operator()(double t, double p, State i, double s) const;

    static Policy hold();
    static Policy always_quote();
    static Policy ask_only();
    static Policy bid_only();
    static Policy constant(Control l);
    // Each side quotes with probability q, drawn from a hash of (seed, t, p, i, s)
    // so the rule stays a pure function of its arguments.
    static Policy random(double q, std::uint64_t seed);

private:
    std::string name_;
    Rule rule_;
};

}  // namespace smm
