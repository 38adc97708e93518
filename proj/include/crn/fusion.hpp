#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "crn/coop_single.hpp"
#include "crn/indicators.hpp"
#include "crn/pmf_algebra.hpp"

namespace crn {

/// Fusion rule over the 2^k report patterns of k cooperative nodes,
/// gamma_table indexed in SubsetIndexer order, together with its Bayesian
/// risk under the pmf pair it was built from.
struct DecisionRule {
    int k = 0;
    std::vector<std::uint8_t> gamma_table;
    double risk = 0.0;

    [[nodiscard]] bool all_zero() const;
};

/// Likelihood-ratio product M_R a node contributes when it agrees with
/// the hypothesis suggested by its correlation sign. M_R = 1 marks an
/// uninformative node.
struct Reliability {
    double value = 1.0;
    int sign = 1; ///< sign of the node/receiver correlation (+1 when >= 0)
};

/// Two cooperative nodes whose reports are correlated under the
/// receiver-busy hypothesis. delta() is the covariance shift of the joint
/// report pmf induced by rho12.
struct TwoNodeCorr {
    double beta1 = 0.5;
    double beta2 = 0.5;
    double gamma1 = 0.5;
    double gamma2 = 0.5;
    double rho12 = 0.0;

    [[nodiscard]] double delta() const;
    /// Feasibility bounds on delta() in the symmetric scenario
    /// (beta_i = gamma_i, both correlations positive, node 1 at least as
    /// reliable as node 2).
    [[nodiscard]] double delta_min() const { return -(1.0 - beta1) * (1.0 - beta2); }
    [[nodiscard]] double delta_max() const { return (1.0 - beta1) * beta2; }
};

/// Shape of a two-node fusion table, named by the Boolean function of the
/// raw node reports that multiplies the transmitter verdict.
enum class TwoNodeCase : std::uint8_t {
    Always0,
    PassTx,
    Node1,
    Node2,
    NotNode1,
    NotNode2,
    And,
    Or,
    Xor,
    Xnor,
    Node1AndNotNode2,
    Node2AndNotNode1,
    NotNode1AndNotNode2,
    Node1OrNotNode2,
    Node2OrNotNode1,
    NotNode1OrNotNode2,
};

struct TwoNodeRule {
    DecisionRule rule;
    TwoNodeCase label = TwoNodeCase::Always0;
    /// Per-pattern admissibility thresholds w*P0[i]/(P1[i]+w*P0[i]).
    std::array<double, 4> pattern_thresholds{};
};

/// Bayes-optimal fusion rule: declare per pattern i iff
/// alpha*P1[i] >= w*(1-alpha)*P0[i] (ties declare). Risk is
/// sum_i min(w*(1-alpha)*P0[i], alpha*P1[i]).
DecisionRule optimal_rule(const IndicatorStats& stats, const JointPmf& p1, const JointPmf& p0);

/// Bayesian risk of an arbitrary fusion table under the given pmf pair.
double rule_risk(const std::vector<std::uint8_t>& gamma_table, const IndicatorStats& stats,
                 const JointPmf& p1, const JointPmf& p0);

/// Reliability of one node. Throws DegenerateStats when beta or gamma is
/// 0 or 1 (the likelihood-ratio product diverges).
Reliability reliability(const NodeStats& node);

/// Fusion of independent nodes via the log-reliability threshold test:
/// the nodes agreeing with their correlation sign must accumulate enough
/// log M_R to clear the prior-and-baseline threshold. Equivalent to
/// optimal_rule on the product pmfs.
DecisionRule independent_rule(const SubsetIndexer& idx, const IndicatorStats& stats,
                              const std::vector<NodeStats>& nodes);

/// Two independent nodes: the fused table plus its case label.
TwoNodeRule two_node_independent(const IndicatorStats& stats, const NodeStats& n1,
                                 const NodeStats& n2);

/// Receiver-busy joint pmf of a correlated pair: the independent product
/// of the gammas with the covariance shift tc.delta() applied. Throws
/// InvalidPmf when the shift leaves [0,1].
JointPmf correlated_pair_pmf(const TwoNodeCorr& tc);

/// Two correlated nodes: receiver-busy joint pmf shifted by tc.delta(),
/// receiver-available pmf kept independent. Throws InvalidPmf when the
/// shifted pmf leaves [0,1].
TwoNodeRule two_node_correlated(const IndicatorStats& stats, const TwoNodeCorr& tc);

/// Smallest availability prior at which fusion under the given pmfs ever
/// declares the link: w/(w + max_i P1[i]/P0[i]). A pattern with
/// P0[i] = 0 < P1[i] drives the boundary to 0.
double critical_alpha(double w, const JointPmf& p1, const JointPmf& p0);

/// Case label of a two-node table (k must be 2).
TwoNodeCase classify_two_node(const DecisionRule& rule);

} // namespace crn
