#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace smm {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed of the stream owned by path `index` of an ensemble. Depends only on the
// pair, so a path draws the same numbers whichever thread runs it.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

class Stream {
public:
    explicit Stream(std::uint64_t seed) : eng_(seed) {}
    Stream(std::uint64_t master, std::uint64_t index) : eng_(stream_seed(master, index)) {}

    // Uniform on the open interval (0, 1); 53 random bits, never 0 or 1.
    double uniform() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }
    // Uniform on [0, b).
    double uniform(double b) { return b * (static_cast<double>(eng_() >> 11) * 0x1.0p-53); }
    // Exp(rate) waiting time.
    double exponential(double rate) { return -std::log(uniform()) / rate; }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace smm
