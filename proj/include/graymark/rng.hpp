#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace graymark {

// SplitMix64 (Vigna's public-domain mixer). Every seeded decision in this
// library goes through this generator so that runs are reproducible
// bit-for-bit across platforms and implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1), 53 mantissa bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform in {0, ..., bound-1} by modulo reduction. The bias is below
    // 2^-53 for the bounds used here and the reduction is trivial to
    // reproduce in other languages, which matters more than the bias.
    std::uint64_t next_below(std::uint64_t bound) {
        return next() % bound;
    }

    // Standard normal via Box-Muller. Draw order is pinned: u1 then u2,
    // cosine branch returned first, sine branch cached for the next call.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; // (0,1]
        const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;       // [0,1)
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// FNV-1a, used to fold strings into per-trial seeds.
inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (const char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

} // namespace graymark
