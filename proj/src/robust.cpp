#include "crn/robust.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "crn/errors.hpp"
#include "crn/simplex.hpp"

namespace crn {

RobustSolution solve_robust(const RobustProblem& prob) {
    if (!prob.valid())
        throw std::invalid_argument("solve_robust: malformed problem");
    const SubsetIndexer idx(prob.node_count);
    const int n = idx.size();
    const int s_rows = idx.prefix_size(prob.k_known);
    const double a = prob.stats.alpha;
    const double miss_w = prob.stats.w * (1.0 - a);

    // Variables: [P1 (n) | P0 (n) | u (n) | v (n)] with
    // miss_w*P0 - a*P1 = u - v, so sum(u+v) is the L1 objective.
    const int n_vars = 4 * n;
    const int n_rows = 2 * s_rows + n;
    LpProblem lp;
    lp.c = Eigen::VectorXd::Zero(n_vars);
    lp.c.segment(2 * n, 2 * n).setOnes();
    lp.a_eq = Eigen::MatrixXd::Zero(n_rows, n_vars);
    lp.b_eq = Eigen::VectorXd::Zero(n_rows);
    lp.lower = Eigen::VectorXd::Zero(n_vars);
    lp.upper = Eigen::VectorXd::Constant(n_vars, std::numeric_limits<double>::infinity());
    lp.upper.head(2 * n).setOnes();

    const GMatrix g1 = build_g(idx, 1, prob.k_known);
    const GMatrix g0 = build_g(idx, 0, prob.k_known);
    lp.a_eq.block(0, 0, s_rows, n) = g1.dense.cast<double>();
    lp.b_eq.head(s_rows) = prob.q1.values;
    lp.a_eq.block(s_rows, n, s_rows, n) = g0.dense.cast<double>();
    lp.b_eq.segment(s_rows, s_rows) = prob.q0.values;
    for (int i = 0; i < n; ++i) {
        const int r = 2 * s_rows + i;
        lp.a_eq(r, i) = -a;
        lp.a_eq(r, n + i) = miss_w;
        lp.a_eq(r, 2 * n + i) = -1.0;
        lp.a_eq(r, 3 * n + i) = 1.0;
    }

    const LpSolution sol = lp_solve(lp);

    auto extract = [&](int offset, int s) {
        JointPmf p;
        p.s = s;
        p.k = prob.node_count;
        p.values = sol.x.segment(offset, n);
        for (int i = 0; i < n; ++i)
            p.values(i) = std::min(1.0, std::max(0.0, p.values(i)));
        return p;
    };

    RobustSolution out;
    out.p1_opt = extract(0, 1);
    out.p0_opt = extract(n, 0);
    out.rule = optimal_rule(prob.stats, out.p1_opt, out.p0_opt);
    out.objective = out.rule.risk;
    return out;
}

DecisionRule independence_assumption_rule(const SubsetIndexer& idx, const IndicatorStats& stats,
                                          const MarginalSet& q1, const MarginalSet& q0) {
    if (q1.m < 1 || q0.m < 1)
        throw std::invalid_argument(
            "independence_assumption_rule: need at least first-order marginals");
    const int k = idx.node_count();
    std::vector<NodeStats> nodes;
    nodes.reserve(static_cast<std::size_t>(k));
    const int off = idx.block_offset(1);
    for (int i = 0; i < k; ++i)
        nodes.push_back(NodeStats{q1.values(off + i), q0.values(off + i)});
    return independent_rule(idx, stats, nodes);
}

} // namespace crn
