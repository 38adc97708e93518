#pragma once

#include <Eigen/Dense>

namespace crn {

/// Linear program in equality form with box bounds:
///   minimize c.x  subject to  a_eq.x = b_eq,  lower <= x <= upper.
/// Lower bounds must be finite; upper bounds may be +infinity.
struct LpProblem {
    Eigen::VectorXd c;
    Eigen::MatrixXd a_eq;
    Eigen::VectorXd b_eq;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
};

struct LpSolution {
    Eigen::VectorXd x;
    double objective = 0.0;
    int iterations = 0;
};

/// Dense two-phase simplex with Bland's pivoting rule. Throws Infeasible
/// when the constraints admit no point and Unbounded when the objective
/// has no finite minimum.
LpSolution lp_solve(const LpProblem& prob);

/// Largest equality-constraint violation of x, for solution checking.
double lp_residual(const LpProblem& prob, const Eigen::VectorXd& x);

} // namespace crn
