#pragma once

#include <array>
#include <cstddef>
#include <ostream>

#include "smm/errors.hpp"

namespace smm {

// Side of the book. Plus is the ask side, Minus the bid side. Also used as the
// subscript of the two hazards: Plus is the continuation hazard (next price
// move repeats the last one), Minus the reversal hazard.
enum class Side : int { Plus = +1, Minus = -1 };

constexpr int sign(Side nu) { return static_cast<int>(nu); }
constexpr std::size_t side_index(Side nu) { return nu == Side::Plus ? 0 : 1; }
constexpr Side side_from_sign(int v) { return v >= 0 ? Side::Plus : Side::Minus; }
constexpr std::array<Side, 2> kSides{Side::Plus, Side::Minus};

// Element of the four-point state space {1,2,3,4}. States 1,3 follow a down
// move and 2,4 an up move; {1,2} and {3,4} are the two equivalence classes and
// a state only ever jumps into the other class.
class State {
public:
    constexpr explicit State(int v) : v_(v) {
        if (v < 1 || v > 4) throw DomainError("state must be in {1,2,3,4}");
    }

    constexpr int value() const { return v_; }
    constexpr std::size_t index() const { return static_cast<std::size_t>(v_ - 1); }

    friend constexpr bool operator==(State, State) = default;

private:
    int v_;
};

inline std::ostream& operator<<(std::ostream& os, State i) { return os << i.value(); }
inline std::ostream& operator<<(std::ostream& os, Side nu) {
    return os << (nu == Side::Plus ? '+' : '-');
}

constexpr std::array<State, 4> kStates{State(1), State(2), State(3), State(4)};

// alpha(i) = (-1)^i, the direction of the price move that led into i.
constexpr int alpha(int i) { return (i % 2 == 0) ? +1 : -1; }
constexpr int alpha(State i) { return alpha(i.value()); }
constexpr Side alpha_bar(State i) { return side_from_sign(alpha(i)); }

constexpr bool equivalent(State i, State j) { return (i.value() <= 2) == (j.value() <= 2); }

// Admissible targets of i in increasing order.
constexpr std::array<State, 2> successors(State i) {
    return i.value() <= 2 ? std::array<State, 2>{State(3), State(4)}
                          : std::array<State, 2>{State(1), State(2)};
}

// Hazard subscript of the transition i -> j, namely sign(alpha(i + j)).
constexpr Side transition_side(State i, State j) { return side_from_sign(alpha(i.value() + j.value())); }

constexpr State continuation_successor(State i) {
    for (State j : successors(i))
        if (alpha(j) == alpha(i)) return j;
    return i;  // unreachable
}

constexpr State reversal_successor(State i) {
    for (State j : successors(i))
        if (alpha(j) != alpha(i)) return j;
    return i;  // unreachable
}

// Successor of i whose price move is in direction nu.
constexpr State successor_towards(State i, Side nu) {
    for (State j : successors(i))
        if (alpha(j) == sign(nu)) return j;
    return i;  // unreachable
}

}  // namespace smm
