#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "l2stokes/errors.hpp"
#include "l2stokes/model_geometry.hpp"
#include "l2stokes/stokes_rules.hpp"

namespace l2stokes {

/// Parameters of the projective family
///   f(x, y, z) = |x|^{2p} - |y|^{2q} z^{2(p-q)},  x in R^n, y in R^m, z in R,
/// and of its one-singular-point modification
///   |x|^{2p} = |y|^{2q} z^{2(p-q)} + |y|^{2p}.
struct VarietyParams {
    int n = 0, m = 0, p = 0, q = 0;

    VarietyParams(int n_, int m_, int p_, int q_) : n(n_), m(m_), p(p_), q(q_) {
        if (n < 1 || m < 1) throw parameter_error("variety needs n >= 1 and m >= 1");
        if (q < 1 || p <= q) throw parameter_error("variety exponents need p > q >= 1");
    }
};

enum class VarietyKind { V, W };

/// Statistics of the numeric gradient audit in the affine charts.
struct GradientAudit {
    long smooth_samples = 0;
    double min_gradient_norm_smooth = 0.0;   // must stay positive
    double max_gradient_norm_singular = 0.0; // must vanish
    long stratum_samples = 0;                // chart {y_m = 1} probes of {x=0, z=0}
    bool passed = false;
};

/// Where the variety is singular, as a structured claim plus the audit that
/// backs it numerically.
struct SingularSetDescription {
    bool isolated_point = false; // [0, 0, 1]
    bool has_stratum = false;    // {[0, y, 0]} = RP^{m-1}, V only
    int stratum_dim = 0;
    GradientAudit audit;
};

namespace detail {

// |v|^{2e} and its gradient 2e |v|^{2e-2} v, for integer e >= 1
inline double even_power(const std::vector<double>& v, int e) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::pow(s, e);
}

inline std::vector<double> even_power_gradient(const std::vector<double>& v, int e) {
    double s = 0.0;
    for (double c : v) s += c * c;
    const double factor = 2.0 * e * (e >= 2 ? std::pow(s, e - 1) : 1.0);
    std::vector<double> g(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) g[i] = factor * v[i];
    return g;
}

inline double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

inline std::vector<double> random_unit(std::mt19937& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(dim);
    double s = 0.0;
    do {
        s = 0.0;
        for (double& c : v) { c = gauss(rng); s += c * c; }
    } while (s < 1e-12);
    s = std::sqrt(s);
    for (double& c : v) c /= s;
    return v;
}

} // namespace detail

/// Singular set of V ({[0,0,1]} plus an RP^{m-1} stratum) or W ({[0,0,1]}
/// only), checked by a gradient audit on sampled chart points:
///  - in the chart z = 1, the defining gradient is nonzero at sampled smooth
///    points of the variety and vanishes at the claimed singular point;
///  - in the chart y_m = 1, V contains the stratum points {x = 0, z = 0}
///    (all singular) while W misses them entirely.
inline SingularSetDescription variety_singular_set(const VarietyParams& params, VarietyKind kind,
                                                   long samples = 1000, unsigned seed = 7) {
    if (samples < 1) throw parameter_error("audit needs at least one sample");
    const int n = params.n, m = params.m, p = params.p, q = params.q;

    SingularSetDescription description;
    description.isolated_point = true;
    description.has_stratum = kind == VarietyKind::V;
    description.stratum_dim = kind == VarietyKind::V ? m - 1 : 0;

    // chart z = 1 values and gradients
    auto value_z1 = [&](const std::vector<double>& x, const std::vector<double>& y) {
        double f = detail::even_power(x, p) - detail::even_power(y, q);
        if (kind == VarietyKind::W) f -= detail::even_power(y, p);
        return f;
    };
    auto gradient_norm_z1 = [&](const std::vector<double>& x, const std::vector<double>& y) {
        auto gx = detail::even_power_gradient(x, p);
        auto gy = detail::even_power_gradient(y, q);
        if (kind == VarietyKind::W) {
            auto gy2 = detail::even_power_gradient(y, p);
            for (std::size_t i = 0; i < gy.size(); ++i) gy[i] += gy2[i];
        }
        double s = 0.0;
        for (double c : gx) s += c * c;
        for (double c : gy) s += c * c;
        return std::sqrt(s);
    };

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> rho_dist(0.1, 1.0);

    GradientAudit audit;
    audit.min_gradient_norm_smooth = std::numeric_limits<double>::infinity();

    // smooth points of the variety in the chart z = 1: y = rho * eta,
    // |x|^{2p} = |y|^{2q} (+ |y|^{2p} for W) solved along a random direction
    for (long s = 0; s < samples; ++s) {
        const double rho = rho_dist(rng);
        auto eta = detail::random_unit(rng, m);
        auto xi = detail::random_unit(rng, n);
        double rhs = std::pow(rho, 2 * q);
        if (kind == VarietyKind::W) rhs += std::pow(rho, 2 * p);
        const double x_len = std::pow(rhs, 1.0 / (2.0 * p));
        std::vector<double> x(xi), y(eta);
        for (double& c : x) c *= x_len;
        for (double& c : y) c *= rho;
        if (std::abs(value_z1(x, y)) > 1e-9)
            throw inconsistency_error("audit sample failed to land on the variety");
        audit.min_gradient_norm_smooth =
            std::min(audit.min_gradient_norm_smooth, gradient_norm_z1(x, y));
        ++audit.smooth_samples;
    }

    // the claimed singular point [0,0,1] is the chart origin
    {
        std::vector<double> x0(n, 0.0), y0(m, 0.0);
        audit.max_gradient_norm_singular = gradient_norm_z1(x0, y0);
    }

    // chart y_m = 1: stratum points are (x, y', z) = (0, *, 0)
    auto chart_y_probe = [&](const std::vector<double>& yprime) {
        // f = |x|^{2p} - (1+|y'|^2)^q z^{2(p-q)} [- (1+|y'|^2)^p for W] at x=0, z=0
        double one_plus = 1.0;
        for (double c : yprime) one_plus += c * c;
        double f = 0.0;
        if (kind == VarietyKind::W) f -= std::pow(one_plus, p);
        return f;
    };
    for (long s = 0; s < samples / 4 + 1; ++s) {
        std::vector<double> yprime(m - 1);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (double& c : yprime) c = gauss(rng);
        const double f = chart_y_probe(yprime);
        if (kind == VarietyKind::V) {
            // the stratum lies on V; the full gradient vanishes there since
            // every term carries x or z to a power >= 2 or z to a power >= 1
            if (f != 0.0) throw inconsistency_error("stratum point left the variety V");
        } else {
            if (!(std::abs(f) >= 1.0))
                throw inconsistency_error("variety W unexpectedly meets the stratum {x=0, z=0}");
        }
        ++audit.stratum_samples;
    }

    audit.passed = audit.min_gradient_norm_smooth > 1e-8 &&
                   audit.max_gradient_norm_singular == 0.0;
    if (!audit.passed)
        throw inconsistency_error("gradient audit failed: min smooth |grad| = " +
                                  std::to_string(audit.min_gradient_norm_smooth) +
                                  ", singular |grad| = " +
                                  std::to_string(audit.max_gradient_norm_singular));
    description.audit = audit;
    return description;
}

/// The quasi-isometric model of a pointed neighborhood of [0,0,1]:
/// dr^2 + r^2 g_{S^{n-1}} + r^{2 alpha} g_{S^{m-1}} with alpha = p/q.
inline WarpedModel quasi_isometry_model(const VarietyParams& params) {
    return WarpedModel({CrossSection::sphere(params.n - 1), Rational(1)},
                       {CrossSection::sphere(params.m - 1), Rational(params.p, params.q)});
}

struct FailureCondition {
    bool fails = false;
    std::set<long> degrees;
};

/// The failure criterion p(m-1) = q(n-1): when it holds, uniqueness fails in
/// degrees n-1 and m-1. Cross-checked against the boundary-pairing engine on
/// the quasi-isometric model.
inline FailureCondition lst_failure_condition(const VarietyParams& params) {
    FailureCondition condition;
    condition.fails = static_cast<long>(params.p) * (params.m - 1) ==
                      static_cast<long>(params.q) * (params.n - 1);
    if (condition.fails) {
        condition.degrees = {static_cast<long>(params.n - 1), static_cast<long>(params.m - 1)};
        const std::set<long> derived = two_factor_failure(quasi_isometry_model(params));
        if (derived != condition.degrees)
            throw inconsistency_error("failure degrees disagree with the boundary pairing");
    }
    return condition;
}

/// Local model of V_{f,g} = {f(|x|^2) = g(|y|^2)} near 0 when f vanishes to
/// order k and g to order l at 0 (k >= l >= 1): only the vanishing orders
/// survive, giving the warped model with exponent alpha = k/l.
inline WarpedModel vfg_normal_form(int k, int l, int n, int m) {
    if (l < 1 || k < l) throw parameter_error("vanishing orders need k >= l >= 1");
    if (n < 2 || m < 2) throw parameter_error("ambient dimensions need n, m >= 2");
    return WarpedModel({CrossSection::sphere(n - 1), Rational(1)},
                       {CrossSection::sphere(m - 1), Rational(k, l)});
}

/// A chart point (r, v, w) with v on S^{n-1} and w on S^{m-1}.
struct ChartSample {
    double r = 0.0;
    std::vector<double> v;
    std::vector<double> w;
};

inline std::vector<ChartSample> sample_chart_points(int n, int m, long count, double r_min,
                                                    double r_max, unsigned seed) {
    if (n < 1 || m < 1) throw parameter_error("chart dimensions must be >= 1");
    if (count < 1) throw parameter_error("need at least one sample");
    if (!(0.0 < r_min && r_min < r_max && r_max <= 1.0))
        throw parameter_error("need 0 < r_min < r_max <= 1");
    std::vector<ChartSample> samples;
    samples.reserve(static_cast<std::size_t>(count));
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> log_r(std::log(r_min), std::log(r_max));
    for (long i = 0; i < count; ++i) {
        ChartSample s;
        s.r = std::exp(log_r(rng));
        s.v = detail::random_unit(rng, n);
        s.w = detail::random_unit(rng, m);
        samples.push_back(std::move(s));
    }
    return samples;
}

inline std::vector<ChartSample> sample_chart_points(const VarietyParams& params, long count,
                                                    double r_min, double r_max, unsigned seed) {
    return sample_chart_points(params.n, params.m, count, r_min, r_max, seed);
}

struct DistortionReport {
    double max_ratio = 0.0;        // largest generalized eigenvalue over all samples
    double min_ratio = 0.0;        // smallest generalized eigenvalue over all samples
    double max_radial_ratio = 0.0; // largest dr-direction ratio
    double bound = 0.0;            // closed form 1 + alpha^2 r_max^{2(alpha-1)}
    double r_max = 0.0;
    long samples = 0;
};

/// Quasi-isometry audit of the parametrization (r, v, w) -> (r v, r^alpha w)
/// of {|x|^{2p} = |y|^{2q}}: at every sample the Gram matrix of the
/// embedding's finite-difference Jacobian is compared against the model
/// metric's Gram matrix in the same chart; the generalized eigenvalues are
/// the pointwise distortion ratios. The chart-level overload also serves the
/// alpha = 1 normal forms, where the ambient cone is smooth away from 0.
inline DistortionReport pullback_metric_check(double alpha, int n, int m,
                                              const std::vector<ChartSample>& samples) {
    if (!(alpha >= 1.0)) throw parameter_error("chart exponent alpha must be >= 1");
    if (samples.empty()) throw parameter_error("need at least one sample");
    const double h = 1e-6; // central-difference step

    DistortionReport report;
    report.max_ratio = 0.0;
    report.min_ratio = std::numeric_limits<double>::infinity();
    report.samples = static_cast<long>(samples.size());

    const int chart_dim = 1 + (n - 1) + (m - 1);
    const int ambient_dim = n + m;

    for (const ChartSample& sample : samples) {
        const double r = sample.r;
        if (r < 100.0 * h)
            throw numeric_error("sample radius " + std::to_string(r) +
                                " too small for the finite-difference step");
        if (static_cast<int>(sample.v.size()) != n || static_cast<int>(sample.w.size()) != m)
            throw parameter_error("sample direction dimensions do not match the variety");
        report.r_max = std::max(report.r_max, r);

        // orthonormal tangent frames at v and w
        auto tangent_frame = [](const std::vector<double>& u) {
            const int d = static_cast<int>(u.size());
            Eigen::MatrixXd frame(d, d - 1);
            // complete u to an orthonormal basis by Gram-Schmidt over the
            // least-aligned coordinate vectors
            std::vector<int> order(d);
            for (int i = 0; i < d; ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return std::abs(u[a]) < std::abs(u[b]); });
            int col = 0;
            for (int idx = 0; idx < d && col < d - 1; ++idx) {
                Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
                e(order[idx]) = 1.0;
                Eigen::VectorXd proj = e;
                double du = 0.0;
                for (int i = 0; i < d; ++i) du += e(i) * u[i];
                for (int i = 0; i < d; ++i) proj(i) -= du * u[i];
                for (int c = 0; c < col; ++c) proj -= frame.col(c).dot(proj) * frame.col(c);
                const double len = proj.norm();
                if (len < 1e-8) continue;
                frame.col(col++) = proj / len;
            }
            if (col != d - 1) throw numeric_error("failed to build a tangent frame");
            return frame;
        };

        Eigen::MatrixXd frame_v = n > 1 ? tangent_frame(sample.v) : Eigen::MatrixXd(1, 0);
        Eigen::MatrixXd frame_w = m > 1 ? tangent_frame(sample.w) : Eigen::MatrixXd(1, 0);

        // embedding of the chart: theta perturbs v, phi perturbs w,
        // F(rho, theta, phi) = (rho * v(theta), rho^alpha * w(phi))
        auto embed = [&](double rho, const Eigen::VectorXd& theta, const Eigen::VectorXd& phi) {
            Eigen::VectorXd out(ambient_dim);
            Eigen::VectorXd vv(n);
            for (int i = 0; i < n; ++i) vv(i) = sample.v[i];
            for (int c = 0; c < frame_v.cols(); ++c) vv += theta(c) * frame_v.col(c);
            vv.normalize();
            Eigen::VectorXd ww(m);
            for (int i = 0; i < m; ++i) ww(i) = sample.w[i];
            for (int c = 0; c < frame_w.cols(); ++c) ww += phi(c) * frame_w.col(c);
            ww.normalize();
            out.head(n) = rho * vv;
            out.tail(m) = std::pow(rho, alpha) * ww;
            return out;
        };

        // finite-difference Jacobian, central differences
        Eigen::MatrixXd jac(ambient_dim, chart_dim);
        {
            Eigen::VectorXd theta0 = Eigen::VectorXd::Zero(frame_v.cols());
            Eigen::VectorXd phi0 = Eigen::VectorXd::Zero(frame_w.cols());
            jac.col(0) = (embed(r + h, theta0, phi0) - embed(r - h, theta0, phi0)) / (2.0 * h);
            for (int c = 0; c < frame_v.cols(); ++c) {
                Eigen::VectorXd tp = theta0, tm = theta0;
                tp(c) += h;
                tm(c) -= h;
                jac.col(1 + c) = (embed(r, tp, phi0) - embed(r, tm, phi0)) / (2.0 * h);
            }
            for (int c = 0; c < frame_w.cols(); ++c) {
                Eigen::VectorXd pp = phi0, pm = phi0;
                pp(c) += h;
                pm(c) -= h;
                jac.col(1 + frame_v.cols() + c) =
                    (embed(r, theta0, pp) - embed(r, theta0, pm)) / (2.0 * h);
            }
        }

        Eigen::MatrixXd gram = jac.transpose() * jac;

        // model metric in the same chart coordinates: the frames are
        // orthonormal, so the Gram matrix is diag(1, r^2 I, r^{2 alpha} I)
        Eigen::VectorXd model_diag(chart_dim);
        model_diag(0) = 1.0;
        for (int c = 0; c < frame_v.cols(); ++c) model_diag(1 + c) = r * r;
        for (int c = 0; c < frame_w.cols(); ++c)
            model_diag(1 + frame_v.cols() + c) = std::pow(r, 2.0 * alpha);

        Eigen::MatrixXd scaled = gram;
        for (int i = 0; i < chart_dim; ++i)
            for (int j = 0; j < chart_dim; ++j)
                scaled(i, j) /= std::sqrt(model_diag(i) * model_diag(j));

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scaled);
        if (solver.info() != Eigen::Success)
            throw numeric_error("generalized eigenvalue computation failed");
        const double lo = solver.eigenvalues().minCoeff();
        const double hi = solver.eigenvalues().maxCoeff();
        if (!(lo > 0.0)) throw numeric_error("degenerate Jacobian Gram matrix at r = " +
                                             std::to_string(r));
        report.max_ratio = std::max(report.max_ratio, hi);
        report.min_ratio = std::min(report.min_ratio, lo);
        report.max_radial_ratio = std::max(report.max_radial_ratio, scaled(0, 0));
    }

    report.bound = 1.0 + alpha * alpha * std::pow(report.r_max, 2.0 * (alpha - 1.0));
    return report;
}

inline DistortionReport pullback_metric_check(const VarietyParams& params,
                                              const std::vector<ChartSample>& samples) {
    return pullback_metric_check(static_cast<double>(params.p) / params.q, params.n, params.m,
                                 samples);
}

} // namespace l2stokes
