#include "crn/coop_single.hpp"

#include <algorithm>
#include <cmath>

#include "crn/errors.hpp"

namespace crn {

double correlation(double alpha, const NodeStats& node) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DegenerateStats("correlation: alpha must lie strictly inside (0,1)");
    const double p_co1 = alpha * node.beta + (1.0 - alpha) * (1.0 - node.gamma);
    const double p_co0 = alpha * (1.0 - node.beta) + (1.0 - alpha) * node.gamma;
    if (p_co1 <= 0.0 || p_co0 <= 0.0)
        throw DegenerateStats("correlation: degenerate node report distribution");
    return std::sqrt(alpha * (1.0 - alpha)) * (node.beta + node.gamma - 1.0) /
           std::sqrt(p_co1 * p_co0);
}

double relevance_threshold(const NodeStats& node) {
    const double num = node.beta + node.gamma - 1.0;
    const double den = 2.0 * (node.beta * node.gamma + (1.0 - node.beta) * (1.0 - node.gamma));
    return std::fabs(num) / std::sqrt(den);
}

SingleCoopRule single_coop_rule(const IndicatorStats& stats, const NodeStats& node) {
    SingleCoopRule r;
    const double w = stats.w;
    r.alpha1 = w * node.gamma / (1.0 - node.beta + w * node.gamma);
    r.alpha2 = w * (1.0 - node.gamma) / (node.beta + w * (1.0 - node.gamma));

    const double lo = std::min(r.alpha1, r.alpha2);
    const double hi = std::max(r.alpha1, r.alpha2);
    const double rho_sign = node.beta + node.gamma - 1.0;

    if (stats.alpha >= hi) {
        r.rule_kind = CoopRuleKind::PassTx;
    } else if (stats.alpha <= lo) {
        r.rule_kind = CoopRuleKind::Always0;
    } else {
        // Strictly between the thresholds, which are distinct here, so the
        // node is informative and the sign of the correlation picks the branch.
        r.rule_kind = rho_sign > 0.0 ? CoopRuleKind::TxAndCo : CoopRuleKind::TxAndNotCo;
    }
    return r;
}

SingleCoopRule min_error_rule(double alpha, const NodeStats& node) {
    const double rho = correlation(alpha, node);
    const double psi = relevance_threshold(node);
    if (std::fabs(rho) <= psi) {
        SingleCoopRule r;
        r.alpha1 = r.alpha2 = 0.5;
        r.rule_kind = alpha >= 0.5 ? CoopRuleKind::PassTx : CoopRuleKind::Always0;
        return r;
    }
    return single_coop_rule(IndicatorStats{alpha, 1.0}, node);
}

} // namespace crn
