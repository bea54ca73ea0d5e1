#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace netrel {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Used for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic RNG. mt19937_64 output is pinned bit-for-bit by the standard;
// std::*_distribution results are implementation-defined, so every variate
// transform here is hand-rolled and platform-stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1) with 53-bit resolution
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // uniform over [0, bound), bound >= 1, unbiased via rejection
    std::uint64_t below(std::uint64_t bound) {
        assert(bound >= 1);
        const std::uint64_t min = (0ULL - bound) % bound;  // 2^64 mod bound
        std::uint64_t x;
        do {
            x = engine_();
        } while (x < min);
        return x % bound;
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

    // Fisher-Yates; std::shuffle is implementation-defined, this one is pinned.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace netrel
