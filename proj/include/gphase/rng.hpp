#pragma once

// Deterministic count sampling. Every scan point gets its own generator
// seeded from (scan seed, point index), so results do not depend on
// evaluation order and identical inputs give identical counts.

#include <cmath>
#include <cstdint>
#include <random>

namespace gphase {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (0x9E3779B97F4A7C15ull + splitmix64(b)));
}

namespace detail {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double standard_normal(std::mt19937_64& rng) {
    double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;  // (0, 1)
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.28318530717958647692 * u2);
}

}  // namespace detail

// Exact inversion sampling, accumulating the pmf outward from the mode (the
// permuted order is still a valid inversion and needs only O(sqrt(mean))
// steps). Means above 1e6 use the Gaussian approximation.
inline std::uint64_t sample_poisson(std::mt19937_64& rng, double mean) {
    if (!(mean > 0.0)) return 0;
    if (mean > 1e6) {
        double n = std::round(mean + std::sqrt(mean) * detail::standard_normal(rng));
        return n < 0.0 ? 0 : static_cast<std::uint64_t>(n);
    }
    const double u = detail::uniform01(rng);
    const std::uint64_t m = static_cast<std::uint64_t>(mean);
    double pm = std::exp(m * std::log(mean) - mean - std::lgamma(static_cast<double>(m) + 1.0));
    double cum = pm;
    if (u < cum) return m;
    std::uint64_t lo = m, hi = m;
    double p_lo = pm, p_hi = pm;
    const std::uint64_t max_iter = 200 + 80 * static_cast<std::uint64_t>(std::sqrt(mean));
    for (std::uint64_t it = 0; it < max_iter; ++it) {
        p_hi *= mean / static_cast<double>(hi + 1);
        ++hi;
        cum += p_hi;
        if (u < cum) return hi;
        if (lo > 0) {
            p_lo *= static_cast<double>(lo) / mean;
            --lo;
            cum += p_lo;
            if (u < cum) return lo;
        }
    }
    return hi;  // u in the far tail beyond the iteration guard
}

}  // namespace gphase
