#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "l2stokes/errors.hpp"

namespace l2stokes {

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gauss_kronrod(F&& f, double a, double b, double& value, double& error) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_mid = f(mid);
    double kronrod = kronrod_weights[7] * f_mid;
    double gauss = gauss_weights[3] * f_mid;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk_nodes[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kronrod += kronrod_weights[i] * fsum;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * fsum;
    }
    value = kronrod * half;
    error = std::abs((kronrod - gauss) * half);
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] with an absolute
/// error target: |result - integral| <= tol. The integrand must be
/// continuous on the closed interval; callers pre-weight endpoint
/// singularities away. Throws quadrature_error when the refinement budget
/// is exhausted before the tolerance is met.
///
/// Error control is two-level: a panel is accepted only when its two halves
/// agree with the whole-panel rule and carry small Kronrod-Gauss estimates
/// themselves. A lone |K - G| estimate can be fooled by integrands whose
/// nonsmooth point sits exactly at a panel center; the whole-vs-halves
/// comparison cannot.
template <class F>
double integrate(F&& f, double a, double b, double tol) {
    if (!(tol > 0.0)) throw parameter_error("quadrature tolerance must be positive");
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) { std::swap(a, b); sign = -1.0; }

    struct Frame {
        double a, b;
        double whole; // K15 value over [a, b], computed by the parent
        double tol;
        int depth;
    };

    constexpr int max_depth = 80;
    constexpr long max_panels = 500000;

    double root_value = 0.0, root_err = 0.0;
    detail::gauss_kronrod(f, a, b, root_value, root_err);

    std::vector<Frame> stack{{a, b, root_value, tol, 0}};
    double total = 0.0;
    double unresolved = 0.0;
    long panels = 0;
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        ++panels;
        const double mid = 0.5 * (fr.a + fr.b);
        double left = 0.0, left_err = 0.0, right = 0.0, right_err = 0.0;
        detail::gauss_kronrod(f, fr.a, mid, left, left_err);
        detail::gauss_kronrod(f, mid, fr.b, right, right_err);
        const double value = left + right;
        const double error = std::abs(fr.whole - value) + left_err + right_err;
        if (error <= 0.5 * fr.tol) {
            total += value;
            continue;
        }
        bool width_floor = (fr.b - fr.a) <= 1e-14 * (b - a);
        if (fr.depth >= max_depth || width_floor || panels > max_panels) {
            // cannot refine further; keep the value and account for the slack
            total += value;
            unresolved += error;
            continue;
        }
        stack.push_back({fr.a, mid, left, 0.5 * fr.tol, fr.depth + 1});
        stack.push_back({mid, fr.b, right, 0.5 * fr.tol, fr.depth + 1});
    }
    if (unresolved > 0.5 * tol)
        throw quadrature_error("quadrature did not converge on [" + std::to_string(a) + ", " +
                               std::to_string(b) + "]: unresolved error " +
                               std::to_string(unresolved) + " exceeds tolerance " +
                               std::to_string(tol) + " after " + std::to_string(panels) +
                               " panels");
    return sign * total;
}

/// Integration with known interior breakpoints (piecewise definitions,
/// support edges). Sampling rules cannot see support slivers narrower than
/// their node spacing, so integrands with knots must be split there.
template <class F>
double integrate(F&& f, double a, double b, double tol,
                 const std::vector<double>& breakpoints) {
    if (!(tol > 0.0)) throw parameter_error("quadrature tolerance must be positive");
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) { std::swap(a, b); sign = -1.0; }

    std::vector<double> cuts{a};
    for (double t : breakpoints)
        if (t > a && t < b) cuts.push_back(t);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double len = cuts[i + 1] - cuts[i];
        if (len <= 0.0) continue;
        const double local_tol = std::max(tol * len / (b - a), 1e-300);
        total += integrate(f, cuts[i], cuts[i + 1], local_tol);
    }
    return sign * total;
}

} // namespace l2stokes
