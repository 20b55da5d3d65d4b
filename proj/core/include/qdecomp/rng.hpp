#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qdecomp {

/// Deterministic random stream. All randomness in the project flows through
/// this wrapper so that runs are reproducible across platforms: uniform
/// doubles are derived from the raw 64-bit output instead of
/// std::uniform_real_distribution, whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_value_(seed), engine_(mix(seed)) {}

    /// Named substream, e.g. Rng(root).substream("optimizer").
    Rng substream(std::string_view label) const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the label
        for (char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        return Rng(seed_value_ ^ h);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection sampling keeps the draw unbiased.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        // splitmix64 finalizer; decorrelates small consecutive seeds.
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_value_ = 0;
    std::mt19937_64 engine_;
};

}  // namespace qdecomp
