#include "crn/harness/scenario.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "crn/rng.hpp"

namespace crn::harness {

using crn::JointPmf;
using crn::SubsetIndexer;

JointPmf comonotone_reports(const SubsetIndexer& idx, int s,
                            const std::vector<double>& prob_one) {
    const int k = idx.node_count();
    if (static_cast<int>(prob_one.size()) != k)
        throw std::invalid_argument("comonotone_reports: need one probability per node");

    std::vector<int> order(prob_one.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return prob_one[static_cast<std::size_t>(a)] <
                                         prob_one[static_cast<std::size_t>(b)]; });

    JointPmf p;
    p.s = s;
    p.k = k;
    p.values = Eigen::VectorXd::Zero(idx.size());

    // U in (p_(j), p_(j+1)] selects the nodes with the k-j largest
    // probabilities; walk the nested masks from "all" down to "none".
    double prev = 0.0;
    std::uint32_t mask = 0;
    for (int i = 0; i < k; ++i)
        mask |= 1u << order[static_cast<std::size_t>(i)];
    for (int j = 0; j < k; ++j) {
        const double pj = prob_one[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
        p.values(idx.index_of(mask)) += pj - prev;
        prev = pj;
        mask &= ~(1u << order[static_cast<std::size_t>(j)]);
    }
    p.values(idx.index_of(0)) += 1.0 - prev;
    return p;
}

CorrelatedScenario make_correlated_scenario(const SubsetIndexer& idx, std::uint64_t seed,
                                            double marginal_low, double marginal_high) {
    if (!(marginal_low <= marginal_high) || marginal_low < 0.0 || marginal_high > 1.0)
        throw std::invalid_argument("make_correlated_scenario: bad marginal range");
    const int k = idx.node_count();
    crn::SplitMix64 rng(seed);
    const auto draw = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform01(); };

    CorrelatedScenario sc;
    for (int i = 0; i < k; ++i) {
        sc.betas.push_back(draw(marginal_low, marginal_high));
        sc.gammas.push_back(draw(marginal_low, marginal_high));
    }
    const double mix1 = draw(0.3, 0.7);
    const double mix0 = draw(0.3, 0.7);

    const JointPmf prod1 = crn::product_pmf(idx, 1, sc.betas);
    const JointPmf como1 = comonotone_reports(idx, 1, sc.betas);
    sc.p1.s = 1;
    sc.p1.k = k;
    sc.p1.values = mix1 * prod1.values + (1.0 - mix1) * como1.values;

    std::vector<double> ones0;
    ones0.reserve(sc.gammas.size());
    for (double g : sc.gammas)
        ones0.push_back(1.0 - g);
    const JointPmf prod0 = crn::product_pmf(idx, 0, sc.gammas);
    const JointPmf como0 = comonotone_reports(idx, 0, ones0);
    sc.p0.s = 0;
    sc.p0.k = k;
    sc.p0.values = mix0 * prod0.values + (1.0 - mix0) * como0.values;
    return sc;
}

} // namespace crn::harness
