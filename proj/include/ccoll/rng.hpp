#pragma once

// Seedable random source with a fixed stream-splitting rule.
//
// Every consumer derives its generator from (seed, stream id) via SplitMix64, so the
// draws of one distribution never depend on how many values another one consumed.
// Uniform and normal variates are produced from raw 64-bit words with fixed formulas
// (53-bit mantissa fill, Marsaglia polar method), making results identical across
// standard libraries.

#include <cmath>
#include <cstdint>
#include <random>

namespace ccoll {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

enum class Stream : std::uint64_t {
    Uniform = 1,
    Gaussian = 2,
    Lens = 3,
    Far = 4,
    Shuffle = 5,
    Premise = 6,
    Validation = 7,
    Instance = 8,
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
    Rng(std::uint64_t seed, Stream stream, std::uint64_t sub = 0)
        : engine_(splitmix64(splitmix64(seed ^ (static_cast<std::uint64_t>(stream) << 56)) ^ sub)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n), unbiased.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    double normal() {
        if (hasSpare_) {
            hasSpare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = uniform(-1.0, 1.0);
            v = uniform(-1.0, 1.0);
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        hasSpare_ = true;
        return u * f;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool hasSpare_ = false;
};

}  // namespace ccoll
