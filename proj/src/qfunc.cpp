#include "crn/qfunc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace crn {

double qfunc(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double qfunc_inv(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("qfunc_inv: p must lie in (0,1)");
    // Bisection on the monotone decreasing Q, then a few Newton steps.
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (qfunc(mid) > p)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    const double inv_sqrt_2pi = 0.3989422804014327;
    for (int i = 0; i < 4; ++i) {
        const double f = qfunc(x) - p;
        const double df = -inv_sqrt_2pi * std::exp(-0.5 * x * x);
        if (df == 0.0)
            break;
        x -= f / df;
    }
    return x;
}

} // namespace crn
