#pragma once

#include "crn/fusion.hpp"
#include "crn/indicators.hpp"
#include "crn/pmf_algebra.hpp"

namespace crn {

/// Fusion under partial statistical knowledge: only the order-k marginal
/// stacks of the K-node report pmfs are known.
struct RobustProblem {
    IndicatorStats stats;
    int k_known = 0;
    int node_count = 1;
    MarginalSet q1;
    MarginalSet q0;

    [[nodiscard]] bool valid() const {
        return stats.valid() && k_known >= 0 && k_known <= node_count && q1.m == k_known &&
               q0.m == k_known && q1.k == node_count && q0.k == node_count;
    }
};

/// Least-favorable pmf pair consistent with the marginals, the fusion rule
/// that is Bayes-optimal against it, and the maximized Bayesian risk.
struct RobustSolution {
    JointPmf p1_opt;
    JointPmf p0_opt;
    DecisionRule rule;
    double objective = 0.0;
};

/// Solves the minimax design: maximize Bayesian risk over all joint pmf
/// pairs matching the known marginals, equivalently minimize the L1 gap
/// |w(1-alpha)P0 - alpha P1| subject to the marginal equalities and
/// 0 <= P <= 1. Throws Infeasible when the marginals admit no joint pmf.
RobustSolution solve_robust(const RobustProblem& prob);

/// Baseline that pretends the nodes are independent: fuses with only the
/// first-order marginals of the two stacks.
DecisionRule independence_assumption_rule(const SubsetIndexer& idx, const IndicatorStats& stats,
                                          const MarginalSet& q1, const MarginalSet& q0);

} // namespace crn
