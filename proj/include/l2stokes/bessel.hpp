#pragma once

#include <cmath>
#include <string>

#include "l2stokes/errors.hpp"

namespace l2stokes {

/// First-kind Bessel function J_nu(x) for nu >= 0, x >= 0.
inline double bessel_j(double nu, double x) {
    if (!(nu >= 0.0)) throw parameter_error("bessel order must be >= 0");
    if (!(x >= 0.0)) throw parameter_error("bessel argument must be >= 0");
    if (x > 1e8)
        throw numeric_error("bessel argument " + std::to_string(x) +
                            " beyond the supported range");
    return std::cyl_bessel_j(nu, x);
}

/// The index-th positive zero j_{nu,index} of J_nu (index is 1-based).
/// Located by a sign-change scan followed by bisection and a secant polish;
/// absolute accuracy is ~1e-13 on the ranges used here.
inline double bessel_j_zero(double nu, int index) {
    if (index < 1) throw parameter_error("zero index must be >= 1");
    if (!(nu >= 0.0)) throw parameter_error("bessel order must be >= 0");

    // J_nu > 0 on (0, j_{nu,1}) and consecutive zeros are never closer than
    // ~3 apart for any nu >= 0, so a unit-step scan cannot skip a pair.
    const double step = 1.0;
    double x0 = nu > 0.0 ? nu : 0.5;
    double f0 = bessel_j(nu, x0);
    // for large nu the function is denormal-small near x = nu; advance until
    // it is safely representable
    while (f0 == 0.0 && x0 < nu + 5.0) {
        x0 += 0.5;
        f0 = bessel_j(nu, x0);
    }

    int found = 0;
    const double x_limit = nu + 4.0 + (index + 2) * 4.0 + 2.0 * std::cbrt(nu + 1.0) * 10.0;
    double a = x0, fa = f0;
    while (a < x_limit) {
        double b = a + step;
        double fb = bessel_j(nu, b);
        if (fb == 0.0) { b += 1e-12; fb = bessel_j(nu, b); }
        if ((fa > 0.0 && fb <= 0.0) || (fa < 0.0 && fb >= 0.0)) {
            ++found;
            if (found == index) {
                // bisection
                double lo = a, hi = b, flo = fa;
                for (int it = 0; it < 100 && hi - lo > 1e-14 * hi; ++it) {
                    double mid = 0.5 * (lo + hi);
                    double fm = bessel_j(nu, mid);
                    if ((flo > 0.0 && fm <= 0.0) || (flo < 0.0 && fm >= 0.0)) {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                }
                // secant polish
                double x1 = lo, x2 = hi;
                double f1 = bessel_j(nu, x1), f2 = bessel_j(nu, x2);
                for (int it = 0; it < 4 && f2 != f1; ++it) {
                    double x3 = x2 - f2 * (x2 - x1) / (f2 - f1);
                    if (!(x3 > lo - 1.0 && x3 < hi + 1.0)) break;
                    x1 = x2; f1 = f2;
                    x2 = x3; f2 = bessel_j(nu, x2);
                }
                return x2;
            }
        }
        a = b;
        fa = fb;
    }
    throw bracketing_error("failed to bracket zero " + std::to_string(index) + " of J_" +
                           std::to_string(nu) + " below x = " + std::to_string(x_limit));
}

} // namespace l2stokes
