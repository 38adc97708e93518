#include "crn/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "crn/errors.hpp"

namespace crn {

bool DecisionRule::all_zero() const {
    return std::all_of(gamma_table.begin(), gamma_table.end(),
                       [](std::uint8_t g) { return g == 0; });
}

double TwoNodeCorr::delta() const {
    return std::sqrt(gamma1 * gamma2 * (1.0 - gamma1) * (1.0 - gamma2)) * rho12;
}

DecisionRule optimal_rule(const IndicatorStats& stats, const JointPmf& p1, const JointPmf& p0) {
    if (p1.k != p0.k || p1.values.size() != p0.values.size())
        throw std::invalid_argument("optimal_rule: pmf pair must share node count");
    const double a = stats.alpha;
    const double miss_w = stats.w * (1.0 - a);
    DecisionRule rule;
    rule.k = p1.k;
    rule.gamma_table.resize(static_cast<std::size_t>(p1.values.size()));
    double risk = 0.0;
    for (int i = 0; i < p1.values.size(); ++i) {
        const double avail = a * p1.values(i);
        const double busy = miss_w * p0.values(i);
        rule.gamma_table[static_cast<std::size_t>(i)] = avail >= busy ? 1 : 0;
        risk += std::min(avail, busy);
    }
    rule.risk = risk;
    return rule;
}

double rule_risk(const std::vector<std::uint8_t>& gamma_table, const IndicatorStats& stats,
                 const JointPmf& p1, const JointPmf& p0) {
    if (static_cast<int>(gamma_table.size()) != p1.values.size())
        throw std::invalid_argument("rule_risk: table size mismatch");
    const double a = stats.alpha;
    const double miss_w = stats.w * (1.0 - a);
    double risk = 0.0;
    for (int i = 0; i < p1.values.size(); ++i)
        risk += gamma_table[static_cast<std::size_t>(i)] ? miss_w * p0.values(i)
                                                         : a * p1.values(i);
    return risk;
}

Reliability reliability(const NodeStats& node) {
    const double b = node.beta;
    const double g = node.gamma;
    if (!(b > 0.0 && b < 1.0 && g > 0.0 && g < 1.0))
        throw DegenerateStats("reliability: beta and gamma must lie strictly inside (0,1)");
    Reliability r;
    r.sign = b + g >= 1.0 ? 1 : -1;
    r.value = r.sign > 0 ? (g * b) / ((1.0 - g) * (1.0 - b)) : ((1.0 - g) * (1.0 - b)) / (g * b);
    return r;
}

DecisionRule independent_rule(const SubsetIndexer& idx, const IndicatorStats& stats,
                              const std::vector<NodeStats>& nodes) {
    const int k = idx.node_count();
    if (nodes.empty() || static_cast<int>(nodes.size()) != k)
        throw std::invalid_argument("independent_rule: need one NodeStats per node");

    std::vector<double> log_mr(nodes.size());
    std::vector<int> sign(nodes.size());
    double baseline = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Reliability r = reliability(nodes[i]);
        log_mr[i] = std::log(r.value);
        sign[i] = r.sign;
        baseline += r.sign > 0 ? std::log(nodes[i].gamma / (1.0 - nodes[i].beta))
                               : std::log((1.0 - nodes[i].gamma) / nodes[i].beta);
    }

    DecisionRule rule;
    rule.k = k;
    rule.gamma_table.resize(static_cast<std::size_t>(idx.size()));
    if (stats.alpha <= 0.0) {
        // No availability mass: never declare.
        std::fill(rule.gamma_table.begin(), rule.gamma_table.end(), std::uint8_t{0});
    } else if (stats.alpha >= 1.0 || stats.w == 0.0) {
        std::fill(rule.gamma_table.begin(), rule.gamma_table.end(), std::uint8_t{1});
    } else {
        const double threshold =
            std::log(stats.w * (1.0 - stats.alpha) / stats.alpha) + baseline;
        for (int j = 0; j < idx.size(); ++j) {
            const std::uint32_t mask = idx.mask(j);
            double agreement = 0.0;
            for (int i = 0; i < k; ++i) {
                const bool reports_one = (mask >> i) & 1u;
                const bool agrees = sign[static_cast<std::size_t>(i)] > 0 ? reports_one
                                                                          : !reports_one;
                if (agrees)
                    agreement += log_mr[static_cast<std::size_t>(i)];
            }
            rule.gamma_table[static_cast<std::size_t>(j)] = agreement >= threshold ? 1 : 0;
        }
    }

    std::vector<double> betas, gammas;
    betas.reserve(nodes.size());
    gammas.reserve(nodes.size());
    for (const NodeStats& n : nodes) {
        betas.push_back(n.beta);
        gammas.push_back(n.gamma);
    }
    rule.risk = rule_risk(rule.gamma_table, stats, product_pmf(idx, 1, betas),
                          product_pmf(idx, 0, gammas));
    return rule;
}

namespace {

TwoNodeRule finish_two_node(const IndicatorStats& stats, const JointPmf& p1,
                            const JointPmf& p0) {
    TwoNodeRule out;
    out.rule = optimal_rule(stats, p1, p0);
    out.label = classify_two_node(out.rule);
    for (int i = 0; i < 4; ++i) {
        const double den = p1.values(i) + stats.w * p0.values(i);
        out.pattern_thresholds[static_cast<std::size_t>(i)] =
            den > 0.0 ? stats.w * p0.values(i) / den : 0.0;
    }
    return out;
}

} // namespace

TwoNodeRule two_node_independent(const IndicatorStats& stats, const NodeStats& n1,
                                 const NodeStats& n2) {
    const SubsetIndexer idx(2);
    const JointPmf p1 = product_pmf(idx, 1, {n1.beta, n2.beta});
    const JointPmf p0 = product_pmf(idx, 0, {n1.gamma, n2.gamma});
    return finish_two_node(stats, p1, p0);
}

JointPmf correlated_pair_pmf(const TwoNodeCorr& tc) {
    const double d = tc.delta();
    JointPmf p0;
    p0.s = 0;
    p0.k = 2;
    p0.values.resize(4);
    // Pattern order: {}, {1}, {2}, {1,2}; the covariance shift d raises the
    // agreeing patterns and lowers the disagreeing ones.
    p0.values << tc.gamma1 * tc.gamma2 + d, (1.0 - tc.gamma1) * tc.gamma2 - d,
        tc.gamma1 * (1.0 - tc.gamma2) - d, (1.0 - tc.gamma1) * (1.0 - tc.gamma2) + d;
    constexpr double clamp_tol = 1e-12;
    for (int i = 0; i < 4; ++i) {
        double& v = p0.values(i);
        if (v < 0.0) {
            if (v < -clamp_tol)
                throw InvalidPmf("correlated_pair_pmf: correlation shift infeasible");
            v = 0.0;
        } else if (v > 1.0) {
            if (v > 1.0 + clamp_tol)
                throw InvalidPmf("correlated_pair_pmf: correlation shift infeasible");
            v = 1.0;
        }
    }
    return p0;
}

TwoNodeRule two_node_correlated(const IndicatorStats& stats, const TwoNodeCorr& tc) {
    const SubsetIndexer idx(2);
    const JointPmf p1 = product_pmf(idx, 1, {tc.beta1, tc.beta2});
    return finish_two_node(stats, p1, correlated_pair_pmf(tc));
}

double critical_alpha(double w, const JointPmf& p1, const JointPmf& p0) {
    if (p1.values.size() != p0.values.size())
        throw std::invalid_argument("critical_alpha: pmf pair must share node count");
    double max_ratio = -1.0;
    for (int i = 0; i < p1.values.size(); ++i) {
        const double num = p1.values(i);
        const double den = p0.values(i);
        if (den > 0.0)
            max_ratio = std::max(max_ratio, num / den);
        else if (num > 0.0)
            return 0.0; // pattern impossible under busy: declaring is free
    }
    if (max_ratio < 0.0)
        throw std::invalid_argument("critical_alpha: no pattern has positive probability");
    return w / (w + max_ratio);
}

TwoNodeCase classify_two_node(const DecisionRule& rule) {
    if (rule.k != 2 || rule.gamma_table.size() != 4)
        throw std::invalid_argument("classify_two_node: rule must cover two nodes");
    const int code = rule.gamma_table[0] | rule.gamma_table[1] << 1 | rule.gamma_table[2] << 2 |
                     rule.gamma_table[3] << 3;
    switch (code) {
    case 0b0000: return TwoNodeCase::Always0;
    case 0b1111: return TwoNodeCase::PassTx;
    case 0b1010: return TwoNodeCase::Node1;
    case 0b1100: return TwoNodeCase::Node2;
    case 0b0101: return TwoNodeCase::NotNode1;
    case 0b0011: return TwoNodeCase::NotNode2;
    case 0b1000: return TwoNodeCase::And;
    case 0b1110: return TwoNodeCase::Or;
    case 0b0110: return TwoNodeCase::Xor;
    case 0b1001: return TwoNodeCase::Xnor;
    case 0b0010: return TwoNodeCase::Node1AndNotNode2;
    case 0b0100: return TwoNodeCase::Node2AndNotNode1;
    case 0b0001: return TwoNodeCase::NotNode1AndNotNode2;
    case 0b1011: return TwoNodeCase::Node1OrNotNode2;
    case 0b1101: return TwoNodeCase::Node2OrNotNode1;
    default: return TwoNodeCase::NotNode1OrNotNode2; // 0b0111
    }
}

} // namespace crn
