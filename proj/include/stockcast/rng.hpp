#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace stockcast {

// Deterministic RNG used everywhere randomness is needed. mt19937_64 output
// is fully specified by the standard; the derived draws below avoid
// std::uniform_*_distribution, whose algorithms are implementation-defined,
// so identical seeds give identical streams on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1): top 53 bits, the usual double construction.
    double next_unit() {
        return double(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // Uniform integer in [0, n) by rejection, bias-free.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = std::size_t(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace stockcast
