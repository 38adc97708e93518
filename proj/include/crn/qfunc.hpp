#pragma once

namespace crn {

/// Right-tail probability of a standard Gaussian, Q(x) = Pr(Z > x).
double qfunc(double x);

/// Inverse of qfunc on (0,1): returns x with Q(x) = p.
double qfunc_inv(double p);

} // namespace crn
