#pragma once

#include <cstdint>
#include <vector>

namespace crn {

/// Availability prior and error weighting of a CR link.
///   alpha — Pr(spectrum available at the receiver | transmitter side clear)
///   w     — weighting factor of a false alarm relative to a missed
///           detection in the Bayesian risk; also the cost ratio of the
///           underlying likelihood-ratio test.
struct IndicatorStats {
    double alpha = 0.0;
    double w = 1.0;

    [[nodiscard]] bool valid() const {
        return alpha >= 0.0 && alpha <= 1.0 && w >= 0.0;
    }
};

/// Past receiver-side availability bits, most recent first.
struct ObservationHistory {
    std::vector<std::uint8_t> bits;

    [[nodiscard]] std::size_t depth() const { return bits.size(); }
    [[nodiscard]] std::size_t ones() const;
};

enum class LinkRule : std::uint8_t {
    Always0, ///< never declare the link available
    PassTx,  ///< declare the link available whenever the transmitter side is clear
};

/// Decision of the no-observation sensing rule together with its Bayesian risk.
struct LinkDecision {
    LinkRule rule_kind = LinkRule::Always0;
    double risk = 0.0;
};

/// Link availability is the AND of the per-end availability indicators.
inline int link_availability(int tx, int rx) { return tx & rx; }

/// Posterior-mean (add-one) estimate of the availability probability:
/// (N+1)/(L+2) for N ones in a depth-L history. L = 0 yields 1/2.
double laplace_estimate(const ObservationHistory& hist);

/// Bayes-optimal sensing rule with known alpha and no side observation:
/// pass the transmitter's verdict iff alpha >= w/(w+1). Risk is
/// min(w(1-alpha), alpha), the smaller of the two constant-rule risks.
LinkDecision inference_rule(const IndicatorStats& stats);

/// Risk of always trusting the transmitter-side sense: w(1-alpha).
double traditional_risk(const IndicatorStats& stats);

/// Exact expected risk of the plug-in rule that estimates alpha from a
/// depth-L history via laplace_estimate and then applies inference_rule.
/// The expectation is over all histories, grouped by their one-count and
/// weighted with Binomial(L, alpha_true) probabilities.
double plugin_expected_risk(double alpha_true, double w, int depth);

/// Weighting factor that enforces an outage budget zeta: w = (1-zeta)/zeta.
double w_from_outage(double zeta);

} // namespace crn
