#include "crn/rng.hpp"

#include <cmath>

namespace crn {

double SplitMix64::normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

SplitMix64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    // Decorrelate the per-trial seeds before SplitMix64's own scrambling.
    std::uint64_t z = seed ^ (trial * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull);
    z ^= z >> 33;
    z *= 0xFF51AFD7ED558CCDull;
    z ^= z >> 33;
    return SplitMix64(z);
}

} // namespace crn
