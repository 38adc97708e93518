#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "crn/coop_single.hpp"
#include "crn/errors.hpp"
#include "crn/fusion.hpp"

using namespace crn;

namespace {

JointPmf random_pmf(const SubsetIndexer& idx, int s, std::mt19937_64& rng) {
    std::exponential_distribution<double> exp_dist(1.0);
    JointPmf p;
    p.s = s;
    p.k = idx.node_count();
    p.values.resize(idx.size());
    double total = 0.0;
    for (int i = 0; i < idx.size(); ++i) {
        p.values(i) = exp_dist(rng);
        total += p.values(i);
    }
    p.values /= total;
    return p;
}

double exhaustive_min_risk(const IndicatorStats& stats, const JointPmf& p1, const JointPmf& p0) {
    const int n = static_cast<int>(p1.values.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t code = 0; code < (1u << n); ++code) {
        std::vector<std::uint8_t> table(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            table[static_cast<std::size_t>(i)] = (code >> i) & 1u;
        best = std::min(best, rule_risk(table, stats, p1, p0));
    }
    return best;
}

// Extends a joint pmf by one node using per-pattern conditional report
// probabilities, preserving the lower-order pmf as its marginal.
JointPmf extend_pmf(const SubsetIndexer& idx_small, const SubsetIndexer& idx_big,
                    const JointPmf& p, const std::vector<double>& cond_one) {
    JointPmf out;
    out.s = p.s;
    out.k = p.k + 1;
    out.values = Eigen::VectorXd::Zero(idx_big.size());
    const std::uint32_t top = 1u << p.k;
    for (int j = 0; j < idx_small.size(); ++j) {
        const std::uint32_t mask = idx_small.mask(j);
        const double c = cond_one[static_cast<std::size_t>(j)];
        out.values(idx_big.index_of(mask | top)) = p.values(j) * c;
        out.values(idx_big.index_of(mask)) = p.values(j) * (1.0 - c);
    }
    return out;
}

} // namespace

TEST_CASE("optimal fusion of one node") {
    const SubsetIndexer idx(1);
    const JointPmf p1 = product_pmf(idx, 1, {0.8});
    const JointPmf p0 = product_pmf(idx, 0, {0.7});
    const DecisionRule rule = optimal_rule({0.6, 1.0}, p1, p0);
    CHECK(rule.gamma_table == std::vector<std::uint8_t>{0, 1});
    CHECK(rule.risk == doctest::Approx(0.24).epsilon(1e-12));
    // Must agree with the four-case single-node rule.
    CHECK(single_coop_rule({0.6, 1.0}, {0.8, 0.7}).rule_kind == CoopRuleKind::TxAndCo);
}

TEST_CASE("optimal fusion at degenerate priors") {
    const SubsetIndexer idx(2);
    std::mt19937_64 rng(3);
    const JointPmf p1 = random_pmf(idx, 1, rng);
    const JointPmf p0 = random_pmf(idx, 0, rng);
    const DecisionRule all_on = optimal_rule({1.0, 9.0}, p1, p0);
    CHECK(std::all_of(all_on.gamma_table.begin(), all_on.gamma_table.end(),
                      [](std::uint8_t g) { return g == 1; }));
    CHECK(all_on.risk == 0.0);
    const DecisionRule all_off = optimal_rule({0.0, 9.0}, p1, p0);
    CHECK(all_off.all_zero());
    CHECK(all_off.risk == 0.0);
}

TEST_CASE("fusion risk is the exhaustive minimum over decision tables") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    for (int k = 1; k <= 3; ++k) {
        const SubsetIndexer idx(k);
        for (int rep = 0; rep < 30; ++rep) {
            const IndicatorStats stats{uni(rng), uni(rng) * 10.0};
            const JointPmf p1 = random_pmf(idx, 1, rng);
            const JointPmf p0 = random_pmf(idx, 0, rng);
            const DecisionRule rule = optimal_rule(stats, p1, p0);
            CHECK(rule.risk == doctest::Approx(exhaustive_min_risk(stats, p1, p0)).epsilon(1e-12));
            CHECK(rule.risk ==
                  doctest::Approx(rule_risk(rule.gamma_table, stats, p1, p0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("reliability") {
    const Reliability high = reliability({0.75, 0.75});
    CHECK(high.value == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(high.sign == 1);

    const Reliability none = reliability({0.8, 0.2});
    CHECK(none.value == doctest::Approx(1.0).epsilon(1e-12));

    const Reliability inverted = reliability({0.25, 0.25});
    CHECK(inverted.value == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(inverted.sign == -1);

    CHECK_THROWS_AS(reliability({1.0, 0.5}), DegenerateStats);
    CHECK_THROWS_AS(reliability({0.5, 0.0}), DegenerateStats);
}

TEST_CASE("independent fusion reduces to a counting rule for equal nodes") {
    const SubsetIndexer idx(4);
    const std::vector<NodeStats> nodes(4, NodeStats{0.8, 0.7});
    const DecisionRule rule = independent_rule(idx, {0.55, 2.0}, nodes);
    for (int i = 0; i < idx.size(); ++i)
        for (int j = 0; j < idx.size(); ++j)
            if (__builtin_popcount(idx.mask(i)) == __builtin_popcount(idx.mask(j)))
                CHECK(rule.gamma_table[static_cast<std::size_t>(i)] ==
                      rule.gamma_table[static_cast<std::size_t>(j)]);
}

TEST_CASE("independent fusion matches optimal fusion on product pmfs") {
    std::mt19937_64 rng(57);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    for (int k = 1; k <= 6; ++k) {
        const SubsetIndexer idx(k);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<NodeStats> nodes;
            std::vector<double> betas, gammas;
            for (int i = 0; i < k; ++i) {
                nodes.push_back({uni(rng), uni(rng)});
                betas.push_back(nodes.back().beta);
                gammas.push_back(nodes.back().gamma);
            }
            const IndicatorStats stats{uni(rng), uni(rng) * 10.0};
            const DecisionRule log_rule = independent_rule(idx, stats, nodes);
            const DecisionRule opt =
                optimal_rule(stats, product_pmf(idx, 1, betas), product_pmf(idx, 0, gammas));
            CHECK(log_rule.gamma_table == opt.gamma_table);
            CHECK(log_rule.risk == doctest::Approx(opt.risk).epsilon(1e-12));
        }
    }
}

TEST_CASE("a node with unit reliability is ignored") {
    const SubsetIndexer idx(2);
    const std::vector<NodeStats> nodes{{0.8, 0.7}, {0.6, 0.4}};
    const DecisionRule rule = independent_rule(idx, {0.6, 1.0}, nodes);
    for (int i = 0; i < idx.size(); ++i) {
        const std::uint32_t mask = idx.mask(i);
        const std::uint32_t flipped = mask ^ 0b10u;
        CHECK(rule.gamma_table[static_cast<std::size_t>(i)] ==
              rule.gamma_table[static_cast<std::size_t>(idx.index_of(flipped))]);
    }
}

TEST_CASE("two independent nodes: case structure over the prior") {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    std::uniform_real_distribution<double> wdist(0.3, 6.0);
    int order_violations = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const NodeStats n1{uni(rng), uni(rng)};
        const NodeStats n2{uni(rng), uni(rng)};
        const double w = wdist(rng);
        const TwoNodeRule probe = two_node_independent({0.5, w}, n1, n2);
        std::array<double, 4> sorted = probe.pattern_thresholds;
        std::sort(sorted.begin(), sorted.end());

        const Reliability r1 = reliability(n1);
        const Reliability r2 = reliability(n2);
        if (r1.value == r2.value)
            continue;

        // Probe strictly inside each band plus the two outer regions.
        std::vector<double> alphas{sorted[0] / 2.0, (sorted[3] + 1.0) / 2.0};
        for (int b = 0; b + 1 < 4; ++b)
            if (sorted[b + 1] - sorted[b] > 1e-6)
                alphas.push_back(0.5 * (sorted[b] + sorted[b + 1]));
        for (double alpha : alphas) {
            bool boundary = false;
            for (double t : sorted)
                boundary |= std::fabs(alpha - t) < 1e-9;
            if (boundary || alpha <= 0.0 || alpha >= 1.0)
                continue;
            const TwoNodeRule tr = two_node_independent({alpha, w}, n1, n2);
            // The fusion table must be the per-pattern threshold test.
            for (int i = 0; i < 4; ++i)
                CHECK(tr.rule.gamma_table[static_cast<std::size_t>(i)] ==
                      (alpha >= tr.pattern_thresholds[static_cast<std::size_t>(i)] ? 1 : 0));

            const int on_patterns =
                std::count_if(tr.rule.gamma_table.begin(), tr.rule.gamma_table.end(),
                              [](std::uint8_t g) { return g != 0; });
            if (on_patterns == 1) {
                // AND of the effective literals.
                const std::uint32_t expect_mask =
                    (r1.sign > 0 ? 0b01u : 0u) | (r2.sign > 0 ? 0b10u : 0u);
                const SubsetIndexer idx(2);
                CHECK(tr.rule.gamma_table[static_cast<std::size_t>(
                          idx.index_of(expect_mask))] == 1);
            } else if (on_patterns == 2) {
                // Single node: the more reliable one, with its sign.
                const bool first = r1.value > r2.value;
                const TwoNodeCase expect =
                    first ? (r1.sign > 0 ? TwoNodeCase::Node1 : TwoNodeCase::NotNode1)
                          : (r2.sign > 0 ? TwoNodeCase::Node2 : TwoNodeCase::NotNode2);
                CHECK(tr.label == expect);
            } else if (on_patterns == 3) {
                // OR of the effective literals: only the all-disagree
                // pattern stays off.
                const std::uint32_t off_mask =
                    (r1.sign > 0 ? 0u : 0b01u) | (r2.sign > 0 ? 0u : 0b10u);
                const SubsetIndexer idx(2);
                CHECK(tr.rule.gamma_table[static_cast<std::size_t>(idx.index_of(off_mask))] ==
                      0);
            }
        }

        // The threshold multiset must match one of the listed orderings
        // (logged, not asserted, when it does not).
        const auto& t = probe.pattern_thresholds;
        const bool listed =
            (r1.sign > 0 && r2.sign > 0 &&
             ((r1.value > r2.value &&
               t[3] <= t[1] && t[1] <= t[2] && t[2] <= t[0]) ||
              (r1.value < r2.value &&
               t[3] <= t[2] && t[2] <= t[1] && t[1] <= t[0]))) ||
            (r1.sign > 0 && r2.sign < 0 &&
             ((r1.value > r2.value &&
               t[1] <= t[3] && t[3] <= t[0] && t[0] <= t[2]) ||
              (r1.value < r2.value &&
               t[1] <= t[0] && t[0] <= t[3] && t[3] <= t[2]))) ||
            (r1.sign < 0 && r2.sign > 0 &&
             ((r1.value > r2.value &&
               t[2] <= t[0] && t[0] <= t[3] && t[3] <= t[1]) ||
              (r1.value < r2.value &&
               t[2] <= t[3] && t[3] <= t[0] && t[0] <= t[1]))) ||
            (r1.sign < 0 && r2.sign < 0 &&
             ((r1.value > r2.value &&
               t[0] <= t[2] && t[2] <= t[1] && t[1] <= t[3]) ||
              (r1.value < r2.value &&
               t[0] <= t[1] && t[1] <= t[2] && t[2] <= t[3])));
        if (!listed)
            ++order_violations;
    }
    if (order_violations > 0)
        MESSAGE("threshold orderings outside the listed table: ", order_violations);
}

TEST_CASE("correlated pair construction") {
    SUBCASE("zero correlation reduces to independence") {
        const NodeStats n1{0.75, 0.75};
        const NodeStats n2{0.7, 0.7};
        for (double alpha : {0.2, 0.5, 0.8}) {
            const TwoNodeRule indep = two_node_independent({alpha, 9.0}, n1, n2);
            const TwoNodeRule corr = two_node_correlated(
                {alpha, 9.0}, {0.75, 0.7, 0.75, 0.7, 0.0});
            CHECK(indep.rule.gamma_table == corr.rule.gamma_table);
            CHECK(indep.rule.risk == doctest::Approx(corr.rule.risk).epsilon(1e-12));
        }
    }
    SUBCASE("feasibility bounds of the covariance shift") {
        const TwoNodeCorr tc{0.75, 0.7, 0.75, 0.7, 0.0};
        CHECK(tc.delta_min() == doctest::Approx(-0.075).epsilon(1e-12));
        CHECK(tc.delta_max() == doctest::Approx(0.175).epsilon(1e-12));
        // Valid exactly within the bounds.
        const double scale = std::sqrt(0.75 * 0.7 * 0.25 * 0.3);
        TwoNodeCorr edge = tc;
        edge.rho12 = tc.delta_max() / scale;
        CHECK_NOTHROW(correlated_pair_pmf(edge));
        edge.rho12 = (tc.delta_max() + 1e-6) / scale;
        CHECK_THROWS_AS(correlated_pair_pmf(edge), InvalidPmf);
        edge.rho12 = tc.delta_min() / scale;
        CHECK_NOTHROW(correlated_pair_pmf(edge));
        edge.rho12 = (tc.delta_min() - 1e-6) / scale;
        CHECK_THROWS_AS(correlated_pair_pmf(edge), InvalidPmf);
    }
    SUBCASE("high correlation turns on the exclusive-or term") {
        // delta >= (2*beta1-1)*(1-beta2) = 0.15 makes agreement itself
        // informative in the middle band.
        const double scale = std::sqrt(0.75 * 0.7 * 0.25 * 0.3);
        const TwoNodeCorr tc{0.75, 0.7, 0.75, 0.7, 0.16 / scale};
        bool saw_xor = false;
        for (double alpha = 0.01; alpha < 1.0; alpha += 0.005) {
            const TwoNodeRule tr = two_node_correlated({alpha, 9.0}, tc);
            saw_xor |= tr.label == TwoNodeCase::Xor;
        }
        CHECK(saw_xor);
    }
}

TEST_CASE("an uninformative node reproduces the no-observation curve") {
    const SubsetIndexer idx(1);
    const JointPmf p1 = product_pmf(idx, 1, {0.8});
    const JointPmf p0 = product_pmf(idx, 0, {0.2});
    CHECK(critical_alpha(9.0, p1, p0) == doctest::Approx(0.9).epsilon(1e-12));
    for (int i = 0; i <= 100; ++i) {
        const IndicatorStats stats{i / 100.0, 9.0};
        CHECK(optimal_rule(stats, p1, p0).risk ==
              doctest::Approx(inference_rule(stats).risk).epsilon(1e-12));
    }
}

TEST_CASE("pair correlation moves the critical boundary non-monotonically") {
    const SubsetIndexer idx(2);
    const JointPmf p1 = product_pmf(idx, 1, {0.75, 0.7});
    const auto boundary = [&](double rho) {
        return critical_alpha(9.0, p1, correlated_pair_pmf({0.75, 0.7, 0.75, 0.7, rho}));
    };
    const SubsetIndexer one(1);
    const double node1_boundary =
        critical_alpha(9.0, product_pmf(one, 1, {0.75}), product_pmf(one, 0, {0.75}));
    // Mild correlation raises the boundary toward the single-node value,
    // strong correlation pushes it below the independent case.
    CHECK(boundary(0.4) > boundary(0.0));
    CHECK(boundary(0.8) < boundary(0.0));
    for (double rho : {0.0, 0.4, 0.8})
        CHECK(boundary(rho) <= node1_boundary + 1e-12);
}

TEST_CASE("critical boundary of the availability prior") {
    SUBCASE("no cooperation") {
        JointPmf one;
        one.s = 1;
        one.k = 0;
        one.values = Eigen::VectorXd::Ones(1);
        JointPmf zero = one;
        zero.s = 0;
        CHECK(critical_alpha(9.0, one, zero) == doctest::Approx(0.9).epsilon(1e-15));
    }
    SUBCASE("single node") {
        const SubsetIndexer idx(1);
        const JointPmf p1 = product_pmf(idx, 1, {0.8});
        const JointPmf p0 = product_pmf(idx, 0, {0.7});
        CHECK(critical_alpha(9.0, p1, p0) == doctest::Approx(27.0 / 35.0).epsilon(1e-12));
    }
    SUBCASE("uninformative observations") {
        const SubsetIndexer idx(2);
        std::mt19937_64 rng(5);
        const JointPmf p = random_pmf(idx, 1, rng);
        JointPmf q = p;
        q.s = 0;
        CHECK(critical_alpha(4.0, p, q) == doctest::Approx(0.8).epsilon(1e-12));
    }
    SUBCASE("an impossible-under-busy pattern drives the boundary to zero") {
        const SubsetIndexer idx(1);
        JointPmf p1 = product_pmf(idx, 1, {0.5});
        JointPmf p0 = product_pmf(idx, 0, {1.0});
        CHECK(critical_alpha(9.0, p1, p0) == 0.0);
    }
}

TEST_CASE("the boundary never rises when a node is added") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    for (int rep = 0; rep < 50; ++rep) {
        int k = 1;
        SubsetIndexer idx(k);
        JointPmf p1 = random_pmf(idx, 1, rng);
        JointPmf p0 = random_pmf(idx, 0, rng);
        double last = critical_alpha(9.0, p1, p0);
        while (k < 5) {
            const SubsetIndexer big(k + 1);
            std::vector<double> cond1, cond0;
            for (int j = 0; j < idx.size(); ++j) {
                cond1.push_back(uni(rng));
                cond0.push_back(uni(rng));
            }
            p1 = extend_pmf(idx, big, p1, cond1);
            p0 = extend_pmf(idx, big, p0, cond0);
            ++k;
            idx = big;
            const double next = critical_alpha(9.0, p1, p0);
            CHECK(next <= last + 1e-12);
            last = next;
        }
    }
}

TEST_CASE("risk decreases with reliability along symmetric-error paths") {
    for (double alpha : {0.3, 0.6, 0.85}) {
        for (double w : {1.0, 9.0}) {
            const SubsetIndexer idx(1);
            double last = std::numeric_limits<double>::infinity();
            for (double t = 0.5; t <= 0.99; t += 0.01) {
                const JointPmf p1 = product_pmf(idx, 1, {t});
                const JointPmf p0 = product_pmf(idx, 0, {t});
                const double risk = optimal_rule({alpha, w}, p1, p0).risk;
                CHECK(risk <= last + 1e-12);
                last = risk;
            }
        }
    }
}
