#pragma once

#include <cstdint>

namespace crn {

/// SplitMix64: tiny, fast, and seedable in O(1), which lets every Monte
/// Carlo trial own an independent stream derived from (seed, trial). That
/// makes results independent of thread count and scheduling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in (0, 1].
    double uniform01() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (two uniforms per call).
    double normal();

private:
    std::uint64_t state_;
};

/// Stream for one Monte Carlo trial of one experiment.
SplitMix64 trial_rng(std::uint64_t seed, std::uint64_t trial);

} // namespace crn
