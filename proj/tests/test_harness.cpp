#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crn/errors.hpp"
#include "crn/harness/experiments.hpp"
#include "crn/harness/pmf_io.hpp"
#include "crn/harness/scenario.hpp"

using namespace crn;
using namespace crn::harness;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    std::string path;
    explicit TempDir(const std::string& name) : path("/tmp/crn_test_" + name) {
        std::filesystem::create_directories(path);
    }
};

} // namespace

TEST_CASE("unknown configuration keys are rejected") {
    CHECK_THROWS_AS(RiskCurveConfig::from_json(json::parse(R"({"frequency": 5})")),
                    ConfigError);
    CHECK_THROWS_AS(RiskCurveConfig::from_json(
                        json::parse(R"({"nodes": [{"beta": 0.5, "delta": 1}]})")),
                    ConfigError);
    CHECK_THROWS_AS(
        NeighborhoodCliConfig::from_json(json::parse(R"({"model": {"mu1": 3}})")), ConfigError);
    CHECK_NOTHROW(RiskCurveConfig::from_json(json::parse(R"({"w": 4.0, "L": 10})")));
}

TEST_CASE("alpha grids include both endpoints") {
    AlphaGrid g{0.0, 1.0, 0.25};
    const std::vector<double> pts = g.points();
    REQUIRE(pts.size() == 5);
    CHECK(pts.front() == 0.0);
    CHECK(pts.back() == 1.0);
}

TEST_CASE("risk curve output is byte-stable") {
    TempDir dir_a("risk_a");
    TempDir dir_b("risk_b");
    RiskCurveConfig cfg;
    cfg.grid = AlphaGrid{0.0, 1.0, 0.05};
    const RunReport a = run_risk_curve(cfg, 7, dir_a.path, "stable", false);
    const RunReport b = run_risk_curve(cfg, 7, dir_b.path, "stable", false);
    REQUIRE(a.files.size() == 1);
    REQUIRE(b.files.size() == 1);
    CHECK(slurp(a.files[0]) == slurp(b.files[0]));
}

TEST_CASE("risk curve values match the library") {
    TempDir dir("riskvals");
    RiskCurveConfig cfg;
    cfg.grid = AlphaGrid{0.5, 0.5, 1.0}; // single row at alpha = 0.5
    const RunReport r = run_risk_curve(cfg, 7, dir.path, "vals", false);
    const std::string body = slurp(r.files[0]);
    // The traditional-risk column at alpha 0.5 and w 9 is 4.5.
    CHECK(body.find("\n0.5,4.5,0.5,") != std::string::npos);
}

TEST_CASE("two-node sweep rejects infeasible correlation") {
    TempDir dir("fig6");
    TwoNodeSweepConfig cfg;
    cfg.rho12 = {0.95}; // delta above the feasible band
    CHECK_THROWS_AS(run_two_node_sweep(cfg, 1, dir.path, "fig6bad", false), InvalidPmf);
}

TEST_CASE("two-node sweep emits markers and rows") {
    TempDir dir("fig6ok");
    TwoNodeSweepConfig cfg;
    cfg.grid = AlphaGrid{0.0, 1.0, 0.1};
    const RunReport r = run_two_node_sweep(cfg, 1, dir.path, "fig6", false);
    const std::string body = slurp(r.files[0]);
    CHECK(body.find("# alpha_c_rho_0 =") != std::string::npos);
    CHECK(body.find("# alpha_c_rho_0.8 =") != std::string::npos);
    CHECK(body.find("alpha,risk_node1,risk_rho_0") != std::string::npos);
}

TEST_CASE("comonotone coupling preserves the marginals") {
    const SubsetIndexer idx(5);
    const std::vector<double> probs{0.9, 0.3, 0.55, 0.7, 0.1};
    const JointPmf p = comonotone_reports(idx, 1, probs);
    CHECK(is_valid_pmf(p.values, 1e-12));
    const MarginalSet q = joint_to_marginals(idx, p, 1);
    for (int i = 0; i < 5; ++i)
        CHECK(q.values(1 + i) == doctest::Approx(probs[static_cast<std::size_t>(i)])
                                     .epsilon(1e-12));
}

TEST_CASE("seeded correlated scenario is deterministic and in range") {
    const SubsetIndexer idx(6);
    const auto a = make_correlated_scenario(idx, 427, 0.65, 0.85);
    const auto b = make_correlated_scenario(idx, 427, 0.65, 0.85);
    CHECK(a.p1.values == b.p1.values);
    CHECK(a.p0.values == b.p0.values);
    CHECK(is_valid_pmf(a.p1.values, 1e-12));
    CHECK(is_valid_pmf(a.p0.values, 1e-12));
    const MarginalSet q1 = joint_to_marginals(idx, a.p1, 1);
    const MarginalSet q0 = joint_to_marginals(idx, a.p0, 1);
    for (int i = 0; i < 6; ++i) {
        CHECK(q1.values(1 + i) >= 0.65);
        CHECK(q1.values(1 + i) <= 0.85);
        CHECK(q0.values(1 + i) >= 0.65);
        CHECK(q0.values(1 + i) <= 0.85);
    }
}

TEST_CASE("pmf csv roundtrip") {
    TempDir dir("pmf");
    const SubsetIndexer idx(3);
    const JointPmf p = product_pmf(idx, 1, {0.8, 0.6, 0.7});
    const std::string joint_path = dir.path + "/joint.csv";
    write_joint_csv(joint_path, idx, p);
    const PmfDocument doc = read_pmf_csv(joint_path);
    const auto* back = std::get_if<JointPmf>(&doc);
    REQUIRE(back != nullptr);
    CHECK(back->s == 1);
    CHECK(back->k == 3);
    CHECK((back->values - p.values).cwiseAbs().maxCoeff() < 1e-12);

    const MarginalSet q = joint_to_marginals(idx, p, 2);
    const std::string marg_path = dir.path + "/marg.csv";
    write_marginals_csv(marg_path, idx, q);
    const PmfDocument doc2 = read_pmf_csv(marg_path);
    const auto* back2 = std::get_if<MarginalSet>(&doc2);
    REQUIRE(back2 != nullptr);
    CHECK(back2->m == 2);
    CHECK((back2->values - q.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("robust sweep rows keep the documented ordering") {
    TempDir dir("robust");
    RobustSweepConfig cfg;
    cfg.node_count = 3;
    cfg.k_known = {0, 2, 3};
    cfg.grid = AlphaGrid{0.3, 0.7, 0.2};
    const RunReport r = run_robust_sweep(cfg, cfg.pmf_seed, dir.path, "robust", false);
    const std::string body = slurp(r.files[0]);
    std::stringstream ss(body);
    std::string line;
    int rows = 0;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'a')
            continue;
        ++rows;
        double alpha, k, robust, optimal, indep;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &alpha, &k, &robust, &optimal,
                            &indep) == 5);
        CHECK(robust >= optimal - 1e-9);
        if (k == 3) // full information
            CHECK(robust == doctest::Approx(optimal).epsilon(1e-9));
    }
    CHECK(rows == 3 * 3);
}

TEST_CASE("reproduce rejects unknown figures") {
    CHECK_THROWS_AS(reproduce("fig9", json(nullptr), std::nullopt, "/tmp", false), ConfigError);
}
