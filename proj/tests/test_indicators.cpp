#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "crn/indicators.hpp"

using namespace crn;

TEST_CASE("link availability is the AND of the endpoint indicators") {
    CHECK(link_availability(1, 1) == 1);
    CHECK(link_availability(1, 0) == 0); // hidden terminal
    CHECK(link_availability(0, 1) == 0); // transmitter busy
    CHECK(link_availability(0, 0) == 0);
}

TEST_CASE("laplace estimate") {
    CHECK(laplace_estimate(ObservationHistory{}) == 0.5);

    ObservationHistory all_ones;
    all_ones.bits.assign(15, 1);
    CHECK(laplace_estimate(all_ones) == doctest::Approx(16.0 / 17.0).epsilon(1e-15));

    ObservationHistory mixed;
    mixed.bits.assign(15, 0);
    for (int i = 0; i < 7; ++i)
        mixed.bits[static_cast<std::size_t>(i * 2)] = 1;
    CHECK(laplace_estimate(mixed) == doctest::Approx(8.0 / 17.0).epsilon(1e-15));
}

TEST_CASE("laplace estimate stays strictly inside (0,1)") {
    for (int depth = 0; depth <= 20; ++depth) {
        ObservationHistory h;
        h.bits.assign(static_cast<std::size_t>(depth), 0);
        CHECK(laplace_estimate(h) > 0.0);
        h.bits.assign(static_cast<std::size_t>(depth), 1);
        CHECK(laplace_estimate(h) < 1.0);
    }
}

TEST_CASE("inference rule thresholds and risks") {
    SUBCASE("boundary ties decide pass") {
        const LinkDecision d = inference_rule({0.9, 9.0});
        CHECK(d.rule_kind == LinkRule::PassTx);
        CHECK(d.risk == doctest::Approx(0.9).epsilon(1e-12));
    }
    SUBCASE("certain availability") {
        const LinkDecision d = inference_rule({1.0, 123.0});
        CHECK(d.rule_kind == LinkRule::PassTx);
        CHECK(d.risk == 0.0);
    }
    SUBCASE("symmetric costs") {
        const LinkDecision d = inference_rule({0.5, 1.0});
        CHECK(d.rule_kind == LinkRule::PassTx);
        CHECK(d.risk == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("below threshold blocks") {
        const LinkDecision d = inference_rule({0.3, 9.0});
        CHECK(d.rule_kind == LinkRule::Always0);
        CHECK(d.risk == doctest::Approx(0.3).epsilon(1e-15));
    }
}

TEST_CASE("traditional risk") {
    CHECK(traditional_risk({1.0, 9.0}) == 0.0);
    CHECK(traditional_risk({0.5, 9.0}) == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(traditional_risk({0.9, 9.0}) == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("inference risk never exceeds traditional risk") {
    const double w = 9.0;
    for (int i = 0; i <= 1000; ++i) {
        const double alpha = i / 1000.0;
        const IndicatorStats stats{alpha, w};
        const double inf = inference_rule(stats).risk;
        const double trad = traditional_risk(stats);
        CHECK(inf <= trad);
        if (alpha >= w / (w + 1.0))
            CHECK(inf == trad);
        else
            CHECK(inf < trad);
    }
}

TEST_CASE("risk bounded by the larger cost") {
    for (double alpha : {0.0, 0.2, 0.5, 0.9, 1.0})
        for (double w : {0.0, 0.5, 1.0, 9.0}) {
            const LinkDecision d = inference_rule({alpha, w});
            CHECK(d.risk <= std::max(w, 1.0));
        }
}

TEST_CASE("sample mean of the laplace estimate matches (L*alpha+1)/(L+2)") {
    const int depth = 15;
    const long trials = 200000;
    std::mt19937_64 rng(20240811);
    for (double alpha : {0.2, 0.5, 0.8}) {
        std::bernoulli_distribution coin(alpha);
        double sum = 0.0;
        for (long t = 0; t < trials; ++t) {
            ObservationHistory h;
            h.bits.reserve(depth);
            for (int i = 0; i < depth; ++i)
                h.bits.push_back(coin(rng) ? 1 : 0);
            sum += laplace_estimate(h);
        }
        const double mean = sum / static_cast<double>(trials);
        const double expected = (depth * alpha + 1.0) / (depth + 2.0);
        const double se = std::sqrt(depth * alpha * (1.0 - alpha)) / (depth + 2.0) /
                          std::sqrt(static_cast<double>(trials));
        CHECK(std::fabs(mean - expected) <= 3.0 * se);
    }
}

TEST_CASE("plug-in expected risk cannot beat the oracle") {
    const double w = 9.0;
    for (int i = 1; i < 100; ++i) {
        const double alpha = i / 100.0;
        const double plugin = plugin_expected_risk(alpha, w, 15);
        const double oracle = inference_rule({alpha, w}).risk;
        CHECK(plugin >= oracle - 1e-12);
    }
}

TEST_CASE("outage budget to weighting factor") {
    CHECK(w_from_outage(0.1) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(w_from_outage(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(w_from_outage(0.0), std::invalid_argument);
    CHECK_THROWS_AS(w_from_outage(1.0), std::invalid_argument);
}
