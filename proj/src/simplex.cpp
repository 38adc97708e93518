#include "crn/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "crn/errors.hpp"

namespace crn {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-9;
constexpr double kPhase1Eps = 1e-8;
constexpr int kIterationCap = 200000;

// Tableau state for min c.y, A y = b, y >= 0 (standard form). Column
// layout: structural variables first, then one artificial per row.
struct Tableau {
    Eigen::MatrixXd t;       // rows x (n_total + 1), last column is rhs
    Eigen::VectorXd z;       // reduced-cost row, length n_total + 1
    std::vector<int> basis;  // basic variable per row
    int n_struct = 0;
    int n_total = 0;

    void rebuild_cost_row(const Eigen::VectorXd& cost) {
        z.setZero(n_total + 1);
        z.head(cost.size()) = cost;
        for (int r = 0; r < t.rows(); ++r) {
            const double cb = basis[static_cast<std::size_t>(r)] < cost.size()
                                  ? cost(basis[static_cast<std::size_t>(r)])
                                  : 0.0;
            if (cb != 0.0)
                z -= cb * t.row(r).transpose();
        }
    }

    void pivot(int row, int col) {
        t.row(row) /= t(row, col);
        for (int r = 0; r < t.rows(); ++r) {
            if (r == row)
                continue;
            const double f = t(r, col);
            if (f != 0.0)
                t.row(r) -= f * t.row(row);
        }
        const double zf = z(col);
        if (zf != 0.0)
            z -= zf * t.row(row).transpose();
        basis[static_cast<std::size_t>(row)] = col;
    }

    // Dantzig pricing (most negative reduced cost) while the objective
    // makes progress; a stall switches to Bland's rule, whose first-index
    // pivots cannot cycle. Ties in the ratio test always break toward the
    // smallest basic index.
    int run(const std::vector<bool>& allowed, int* iterations) {
        const int rhs = n_total;
        bool bland = false;
        int stall = 0;
        double last_obj = std::numeric_limits<double>::infinity();
        while (true) {
            int enter = -1;
            if (bland) {
                for (int j = 0; j < n_total; ++j) {
                    if (allowed[static_cast<std::size_t>(j)] && z(j) < -kCostEps) {
                        enter = j;
                        break;
                    }
                }
            } else {
                double most_negative = -kCostEps;
                for (int j = 0; j < n_total; ++j) {
                    if (allowed[static_cast<std::size_t>(j)] && z(j) < most_negative) {
                        most_negative = z(j);
                        enter = j;
                    }
                }
            }
            if (enter < 0)
                return 0; // optimal
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int r = 0; r < t.rows(); ++r) {
                const double a = t(r, enter);
                if (a > kPivotEps)
                    best_ratio = std::min(best_ratio, t(r, rhs) / a);
            }
            if (!std::isfinite(best_ratio))
                return 1; // unbounded
            int leave = -1;
            for (int r = 0; r < t.rows(); ++r) {
                const double a = t(r, enter);
                if (a > kPivotEps && t(r, rhs) / a <= best_ratio + kPivotEps) {
                    if (leave < 0 || basis[static_cast<std::size_t>(r)] <
                                         basis[static_cast<std::size_t>(leave)])
                        leave = r;
                }
            }
            pivot(leave, enter);
            if (!bland) {
                const double obj = -z(rhs);
                if (obj < last_obj - 1e-12) {
                    stall = 0;
                    last_obj = obj;
                } else if (++stall > 64) {
                    bland = true;
                }
            }
            if (++*iterations > kIterationCap)
                throw std::runtime_error("lp_solve: iteration cap exceeded");
        }
    }
};

} // namespace

LpSolution lp_solve(const LpProblem& prob) {
    const int n = static_cast<int>(prob.c.size());
    const int m_in = static_cast<int>(prob.b_eq.size());
    if (prob.a_eq.rows() != m_in || prob.a_eq.cols() != n || prob.lower.size() != n ||
        prob.upper.size() != n)
        throw std::invalid_argument("lp_solve: inconsistent problem dimensions");
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(prob.lower(j)))
            throw std::invalid_argument("lp_solve: lower bounds must be finite");
        if (prob.upper(j) < prob.lower(j))
            throw Infeasible("lp_solve: empty variable box");
    }

    if (m_in == 0) {
        // Pure box problem: each variable sits at whichever bound its
        // cost prefers.
        LpSolution sol;
        sol.x = prob.lower;
        for (int j = 0; j < n; ++j) {
            if (prob.c(j) < 0.0) {
                if (!std::isfinite(prob.upper(j)))
                    throw Unbounded("lp_solve: objective is unbounded below");
                sol.x(j) = prob.upper(j);
            }
        }
        sol.objective = prob.c.dot(sol.x);
        return sol;
    }

    // Shift to y = x - lower >= 0 and turn finite upper bounds into slack
    // rows y_j + s_j = upper_j - lower_j.
    std::vector<int> bounded;
    for (int j = 0; j < n; ++j)
        if (std::isfinite(prob.upper(j)))
            bounded.push_back(j);
    const int m = m_in + static_cast<int>(bounded.size());
    const int n_struct = n + static_cast<int>(bounded.size());

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, n_struct);
    Eigen::VectorXd b(m);
    a.topLeftCorner(m_in, n) = prob.a_eq;
    b.head(m_in) = prob.b_eq - prob.a_eq * prob.lower;
    for (std::size_t i = 0; i < bounded.size(); ++i) {
        const int r = m_in + static_cast<int>(i);
        a(r, bounded[i]) = 1.0;
        a(r, n + static_cast<int>(i)) = 1.0;
        b(r) = prob.upper(bounded[i]) - prob.lower(bounded[i]);
    }
    for (int r = 0; r < m; ++r) {
        if (b(r) < 0.0) {
            a.row(r) = -a.row(r);
            b(r) = -b(r);
        }
    }

    Tableau tab;
    tab.n_struct = n_struct;
    tab.n_total = n_struct + m;
    tab.t.resize(m, tab.n_total + 1);
    tab.t << a, Eigen::MatrixXd::Identity(m, m), b;
    tab.basis.resize(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r)
        tab.basis[static_cast<std::size_t>(r)] = n_struct + r;

    // Crash: a column with a single positive entry can start in the basis
    // without an artificial.
    {
        std::vector<int> nonzeros(static_cast<std::size_t>(n_struct), 0);
        std::vector<int> only_row(static_cast<std::size_t>(n_struct), -1);
        for (int r = 0; r < m; ++r)
            for (int j = 0; j < n_struct; ++j)
                if (std::fabs(tab.t(r, j)) > kPivotEps) {
                    ++nonzeros[static_cast<std::size_t>(j)];
                    only_row[static_cast<std::size_t>(j)] = r;
                }
        for (int j = 0; j < n_struct; ++j) {
            if (nonzeros[static_cast<std::size_t>(j)] != 1)
                continue;
            const int r = only_row[static_cast<std::size_t>(j)];
            if (tab.basis[static_cast<std::size_t>(r)] < n_struct || tab.t(r, j) <= kPivotEps)
                continue;
            tab.t.row(r) /= tab.t(r, j);
            tab.basis[static_cast<std::size_t>(r)] = j;
        }
    }

    LpSolution sol;

    // Phase 1: minimize the remaining artificial mass.
    bool any_artificial = false;
    for (int r = 0; r < m; ++r)
        any_artificial |= tab.basis[static_cast<std::size_t>(r)] >= n_struct;
    if (any_artificial) {
        Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(tab.n_total);
        phase1_cost.tail(m).setOnes();
        tab.rebuild_cost_row(phase1_cost);
        std::vector<bool> allowed(static_cast<std::size_t>(tab.n_total), true);
        if (tab.run(allowed, &sol.iterations) != 0)
            throw Unbounded("lp_solve: phase 1 unbounded (internal error)");
        const double infeas = -tab.z(tab.n_total);
        if (infeas > kPhase1Eps)
            throw Infeasible("lp_solve: constraints are inconsistent");
    }

    // Pivot residual artificials out of the basis; rows that cannot be
    // pivoted are redundant and get dropped.
    std::vector<int> keep;
    for (int r = 0; r < static_cast<int>(tab.t.rows()); ++r) {
        if (tab.basis[static_cast<std::size_t>(r)] < n_struct) {
            keep.push_back(r);
            continue;
        }
        int col = -1;
        for (int j = 0; j < n_struct; ++j) {
            if (std::fabs(tab.t(r, j)) > kPivotEps) {
                col = j;
                break;
            }
        }
        if (col >= 0) {
            tab.pivot(r, col);
            keep.push_back(r);
        }
    }
    if (keep.size() != static_cast<std::size_t>(tab.t.rows())) {
        Eigen::MatrixXd pruned(static_cast<int>(keep.size()), tab.t.cols());
        std::vector<int> pruned_basis;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            pruned.row(static_cast<int>(i)) = tab.t.row(keep[i]);
            pruned_basis.push_back(tab.basis[static_cast<std::size_t>(keep[i])]);
        }
        tab.t = std::move(pruned);
        tab.basis = std::move(pruned_basis);
    }

    // Phase 2 over the structural columns only.
    {
        Eigen::VectorXd cost = Eigen::VectorXd::Zero(n_struct);
        cost.head(n) = prob.c;
        tab.rebuild_cost_row(cost);
        std::vector<bool> allowed(static_cast<std::size_t>(tab.n_total), false);
        for (int j = 0; j < n_struct; ++j)
            allowed[static_cast<std::size_t>(j)] = true;
        if (tab.run(allowed, &sol.iterations) != 0)
            throw Unbounded("lp_solve: objective is unbounded below");
    }

    Eigen::VectorXd y = Eigen::VectorXd::Zero(tab.n_total);
    for (int r = 0; r < static_cast<int>(tab.t.rows()); ++r)
        y(tab.basis[static_cast<std::size_t>(r)]) = tab.t(r, tab.n_total);
    sol.x = prob.lower + y.head(n);
    sol.objective = prob.c.dot(sol.x);
    return sol;
}

double lp_residual(const LpProblem& prob, const Eigen::VectorXd& x) {
    if (prob.b_eq.size() == 0)
        return 0.0;
    return (prob.a_eq * x - prob.b_eq).cwiseAbs().maxCoeff();
}

} // namespace crn
