#pragma once

#include <cstdint>
#include <vector>

#include "crn/pmf_algebra.hpp"

namespace crn::harness {

/// Joint pmf whose positive report correlation comes from a common
/// uniform draw: node i reports 1 iff U <= prob_one[i]. Mass sits on the
/// nested threshold patterns; first-order report probabilities are exact.
crn::JointPmf comonotone_reports(const crn::SubsetIndexer& idx, int s,
                                 const std::vector<double>& prob_one);

/// Correlated multi-node scenario for the robust-sensing experiments.
struct CorrelatedScenario {
    crn::JointPmf p1;
    crn::JointPmf p0;
    std::vector<double> betas;  ///< first-order marginals under s=1
    std::vector<double> gammas; ///< first-order marginals under s=0
};

/// Seeded construction: per-node marginals drawn uniformly from
/// [marginal_low, marginal_high], each hypothesis pmf a random mixture of
/// the independent product and the comonotone coupling with those
/// marginals. Deterministic in the seed.
CorrelatedScenario make_correlated_scenario(const crn::SubsetIndexer& idx, std::uint64_t seed,
                                            double marginal_low, double marginal_high);

} // namespace crn::harness
