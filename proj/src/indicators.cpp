#include "crn/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crn {

std::size_t ObservationHistory::ones() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

double laplace_estimate(const ObservationHistory& hist) {
    const double n = static_cast<double>(hist.ones());
    const double depth = static_cast<double>(hist.depth());
    return (n + 1.0) / (depth + 2.0);
}

LinkDecision inference_rule(const IndicatorStats& stats) {
    LinkDecision d;
    // Ties decide PassTx.
    d.rule_kind = stats.alpha * (stats.w + 1.0) >= stats.w ? LinkRule::PassTx : LinkRule::Always0;
    d.risk = std::min(stats.w * (1.0 - stats.alpha), stats.alpha);
    return d;
}

double traditional_risk(const IndicatorStats& stats) {
    return stats.w * (1.0 - stats.alpha);
}

double plugin_expected_risk(double alpha_true, double w, int depth) {
    if (depth < 0)
        throw std::invalid_argument("plugin_expected_risk: negative depth");
    const double pass_risk = w * (1.0 - alpha_true);
    const double block_risk = alpha_true;
    // P(N = n) = C(L,n) a^n (1-a)^(L-n), accumulated with a running
    // binomial coefficient to stay exact in double for L <= 15.
    double expected = 0.0;
    double binom = 1.0;
    for (int n = 0; n <= depth; ++n) {
        if (n > 0)
            binom = binom * static_cast<double>(depth - n + 1) / static_cast<double>(n);
        const double prob =
            binom * std::pow(alpha_true, n) * std::pow(1.0 - alpha_true, depth - n);
        const double alpha_hat = (n + 1.0) / (depth + 2.0);
        const bool pass = alpha_hat * (w + 1.0) >= w;
        expected += prob * (pass ? pass_risk : block_risk);
    }
    return expected;
}

double w_from_outage(double zeta) {
    if (!(zeta > 0.0 && zeta < 1.0))
        throw std::invalid_argument("w_from_outage: zeta must lie in (0,1)");
    return (1.0 - zeta) / zeta;
}

} // namespace crn
