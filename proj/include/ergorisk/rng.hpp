#pragma once

#include <cstdint>

#include "ergorisk/probcore.hpp"

namespace ergorisk {

/// splitmix64: 64-bit generator with an additive Weyl state and a strong
/// finalizer. Cheap to seed, so every structure in a simulation gets its
/// own stream and results cannot depend on how work is chunked.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1), strictly inside: (k + 0.5) / 2^53.
    double uniform01() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Decorrelated substream for (seed, index).
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(detail::mix64(seed ^ detail::mix64(index + 0x9E3779B97F4A7C15ull)));
}

/// Standard normal draw via the inverse CDF; deterministic across platforms
/// (no library distribution involved).
inline double normal_draw(SplitMix64& rng) { return std_normal_quantile(rng.uniform01()); }

inline double lognormal_draw(const LognormalSpec& spec, SplitMix64& rng) {
    return spec.median * std::exp(spec.dispersion * normal_draw(rng));
}

/// Poisson draw by CDF inversion — exact and loop-free of rejection
/// nondeterminism. Intended for small means (a handful of events).
inline int poisson_draw(double mean, SplitMix64& rng) {
    if (mean == 0.0) return 0;
    const double u = rng.uniform01();
    double p = std::exp(-mean);
    double cum = p;
    int k = 0;
    const int cap = static_cast<int>(mean + 40.0 * std::sqrt(mean) + 32.0);
    while (u > cum && k < cap) {
        ++k;
        p *= mean / k;
        cum += p;
    }
    return k;
}

}  // namespace ergorisk
