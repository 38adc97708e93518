#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "crn/errors.hpp"
#include "crn/simplex.hpp"

using namespace crn;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LpProblem make_problem(int n, int m) {
    LpProblem p;
    p.c = Eigen::VectorXd::Zero(n);
    p.a_eq = Eigen::MatrixXd::Zero(m, n);
    p.b_eq = Eigen::VectorXd::Zero(m);
    p.lower = Eigen::VectorXd::Zero(n);
    p.upper = Eigen::VectorXd::Constant(n, kInf);
    return p;
}

// Exhaustive vertex enumeration for standard-form problems (x >= 0, no
// finite upper bounds): every basic feasible solution is tried.
double vertex_enumeration_min(const LpProblem& p) {
    const int n = static_cast<int>(p.c.size());
    const int m = static_cast<int>(p.b_eq.size());
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> cols(static_cast<std::size_t>(m));
    const std::function<void(int, int)> recurse = [&](int start, int depth) {
        if (depth == m) {
            Eigen::MatrixXd basis(m, m);
            for (int i = 0; i < m; ++i)
                basis.col(i) = p.a_eq.col(cols[static_cast<std::size_t>(i)]);
            const Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
            if (!lu.isInvertible())
                return;
            const Eigen::VectorXd xb = lu.solve(p.b_eq);
            if ((xb.array() < -1e-9).any())
                return;
            double obj = 0.0;
            for (int i = 0; i < m; ++i)
                obj += p.c(cols[static_cast<std::size_t>(i)]) * xb(i);
            best = std::min(best, obj);
            return;
        }
        for (int j = start; j < n; ++j) {
            cols[static_cast<std::size_t>(depth)] = j;
            recurse(j + 1, depth + 1);
        }
    };
    recurse(0, 0);
    return best;
}

} // namespace

TEST_CASE("absolute-value epigraph") {
    // minimize t subject to t >= x, t >= -x, x = 0.3 (slack form).
    LpProblem p = make_problem(4, 3);
    p.c(0) = 1.0;
    p.a_eq(0, 0) = 1.0;
    p.a_eq(0, 1) = -1.0;
    p.a_eq(0, 2) = -1.0;
    p.a_eq(1, 0) = 1.0;
    p.a_eq(1, 1) = 1.0;
    p.a_eq(1, 3) = -1.0;
    p.a_eq(2, 1) = 1.0;
    p.b_eq(2) = 0.3;
    const LpSolution sol = lp_solve(p);
    CHECK(sol.objective == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(lp_residual(p, sol.x) < 1e-9);
}

TEST_CASE("fully determined system evaluates the point") {
    LpProblem p = make_problem(3, 3);
    p.c << 1.0, -2.0, 0.5;
    p.a_eq = Eigen::MatrixXd::Identity(3, 3);
    p.b_eq << 0.2, 0.5, 0.3;
    const LpSolution sol = lp_solve(p);
    CHECK((sol.x - p.b_eq).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(sol.objective == doctest::Approx(p.c.dot(p.b_eq)).epsilon(1e-12));
}

TEST_CASE("box bounds are honored") {
    // minimize -x with x <= 0.7.
    LpProblem p = make_problem(2, 1);
    p.c(0) = -1.0;
    p.a_eq(0, 1) = 1.0; // y = 0.25 keeps the row count positive
    p.b_eq(0) = 0.25;
    p.upper(0) = 0.7;
    const LpSolution sol = lp_solve(p);
    CHECK(sol.x(0) == doctest::Approx(0.7).epsilon(1e-9));

    p.lower(0) = 0.2;
    p.c(0) = 1.0;
    const LpSolution sol2 = lp_solve(p);
    CHECK(sol2.x(0) == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("infeasible and unbounded problems are reported") {
    SUBCASE("inconsistent equalities") {
        LpProblem p = make_problem(1, 2);
        p.a_eq(0, 0) = 1.0;
        p.b_eq(0) = 1.0;
        p.a_eq(1, 0) = 1.0;
        p.b_eq(1) = 2.0;
        CHECK_THROWS_AS(lp_solve(p), Infeasible);
    }
    SUBCASE("bound outside the equality") {
        LpProblem p = make_problem(1, 1);
        p.a_eq(0, 0) = 1.0;
        p.b_eq(0) = 2.0;
        p.upper(0) = 1.0;
        CHECK_THROWS_AS(lp_solve(p), Infeasible);
    }
    SUBCASE("objective unbounded below") {
        LpProblem p = make_problem(2, 1);
        p.c(0) = -1.0;
        p.a_eq(0, 1) = 1.0;
        p.b_eq(0) = 1.0;
        CHECK_THROWS_AS(lp_solve(p), Unbounded);
    }
}

TEST_CASE("random programs match vertex enumeration") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    std::uniform_int_distribution<int> ndist(4, 9);
    std::uniform_int_distribution<int> mdist(2, 4);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = ndist(rng);
        const int m = mdist(rng);
        LpProblem p = make_problem(n, m);
        // Feasible by construction: b = A x0 with x0 >= 0, and one
        // all-ones row keeps the polytope bounded.
        Eigen::VectorXd x0(n);
        for (int j = 0; j < n; ++j)
            x0(j) = pos(rng);
        for (int i = 0; i + 1 < m; ++i)
            for (int j = 0; j < n; ++j)
                p.a_eq(i, j) = uni(rng);
        p.a_eq.row(m - 1).setOnes();
        p.b_eq = p.a_eq * x0;
        for (int j = 0; j < n; ++j)
            p.c(j) = uni(rng);
        const LpSolution sol = lp_solve(p);
        const double oracle = vertex_enumeration_min(p);
        CHECK(sol.objective == doctest::Approx(oracle).epsilon(1e-9));
        CHECK(lp_residual(p, sol.x) < 1e-9);
        CHECK((sol.x.array() >= -1e-9).all());
    }
}
