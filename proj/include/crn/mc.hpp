#pragma once

#include <cstdint>

#include "crn/geo.hpp"

namespace crn {

/// Conditional Monte Carlo estimate with its standard error.
struct McEstimate {
    double mean = 0.0;
    double se = 0.0;
    long long n_conditioned = 0;
    long long n_trials = 0;
};

/// Samples the received-power model directly (PS state, then dB powers at
/// the endpoints) and estimates alpha = Pr(receiver test passes |
/// transmitter test passes). Independent oracle for alpha_from_geometry.
McEstimate mc_alpha_estimate(const PolarPos& rx, const Scene& scene, const PowerModel& model,
                             long long trials, std::uint64_t seed);

/// Simulates the full sensing chain — per-trial powers at the transmitter,
/// the receiver, and every cooperative node feed the Bayes-optimal fusion
/// table for this position — and estimates Pr(link available | link
/// declared). mean is 0 with n_conditioned = 0 when the rule never
/// declares (prohibitive configuration).
McEstimate mc_outage_estimate(const PolarPos& rx, const Scene& scene, const PowerModel& model,
                              double w, long long trials, std::uint64_t seed);

} // namespace crn
