#pragma once

#include <cstdint>

#include "crn/indicators.hpp"

namespace crn {

/// Detection statistics of one cooperative node, conditioned on the
/// transmitter side being clear:
///   beta  — Pr(node reports available | receiver side available)
///   gamma — Pr(node reports busy      | receiver side busy)
struct NodeStats {
    double beta = 0.5;
    double gamma = 0.5;

    [[nodiscard]] bool valid() const {
        return beta >= 0.0 && beta <= 1.0 && gamma >= 0.0 && gamma <= 1.0;
    }
};

enum class CoopRuleKind : std::uint8_t {
    Always0,
    PassTx,
    TxAndCo,    ///< forward only when the node also reports available
    TxAndNotCo, ///< forward only when the node reports busy (anti-correlated node)
};

/// Four-case sensing rule with one cooperative node. alpha1/alpha2 are the
/// case thresholds: alpha1 = w*gamma/(1-beta+w*gamma),
/// alpha2 = w*(1-gamma)/(beta+w*(1-gamma)).
struct SingleCoopRule {
    CoopRuleKind rule_kind = CoopRuleKind::Always0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

/// Correlation between the node's report and the receiver-side availability.
/// Positive iff beta+gamma > 1. Throws DegenerateStats when alpha is 0 or 1
/// or a mixture probability vanishes (correlation undefined).
double correlation(double alpha, const NodeStats& node);

/// Threshold on |correlation| below which a cooperative node cannot help
/// under the minimum-error criterion (w = 1).
double relevance_threshold(const NodeStats& node);

/// Bayes-optimal sensing rule with one cooperative node. Boundary
/// equalities resolve toward the higher-availability branch; with an
/// uninformative node (beta+gamma = 1) the rule degenerates to the
/// no-observation inference rule.
SingleCoopRule single_coop_rule(const IndicatorStats& stats, const NodeStats& node);

/// Minimum-error-probability variant (w fixed to 1): the node is ignored
/// iff |correlation| <= relevance_threshold(node).
SingleCoopRule min_error_rule(double alpha, const NodeStats& node);

} // namespace crn
