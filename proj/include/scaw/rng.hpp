#pragma once

#include <cmath>
#include <cstdint>

namespace scaw {

/*
 * Deterministic generators, hand-pinned so trace files reproduce bit-for-bit
 * across compilers and standard libraries (std::normal_distribution makes no
 * such promise).
 */

/// splitmix64 (Steele et al.); used to derive independent per-trace streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// xorshift64* — small, full-period for nonzero state.
class XorShift64Star {
public:
    explicit XorShift64Star(std::uint64_t seed)
        // the all-zero state is a fixed point; substitute a fixed constant
        : state_(seed ? seed : 0x6a09e667f3bcc909ull) {}

    std::uint64_t next() {
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545f4914f6cdd1dull;
    }

    std::uint8_t next_byte() { return static_cast<std::uint8_t>(next() >> 56); }

private:
    std::uint64_t state_;
};

/// Uniform double in [0, 1) from the top 53 bits.
inline double to_unit_double(std::uint64_t u) {
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller, one value per call (pairs cached).
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = to_unit_double(rng_.next());
        } while (u1 <= 0.0);
        u2 = to_unit_double(rng_.next());
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    XorShift64Star rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace scaw
