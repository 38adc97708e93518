#pragma once

#include <string>
#include <variant>

#include "crn/pmf_algebra.hpp"

namespace crn::harness {

/// CSV serialization of pmf vectors. Layout: '#' metadata lines carrying
/// kind (joint | marginals), s, k and, for marginal stacks, the order m;
/// then rows (index, subset-bitmask, value) in canonical subset order.
void write_joint_csv(const std::string& path, const crn::SubsetIndexer& idx,
                     const crn::JointPmf& p);
void write_marginals_csv(const std::string& path, const crn::SubsetIndexer& idx,
                         const crn::MarginalSet& q);

using PmfDocument = std::variant<crn::JointPmf, crn::MarginalSet>;

/// Parses either document kind; throws ConfigError on malformed input.
PmfDocument read_pmf_csv(const std::string& path);

} // namespace crn::harness
