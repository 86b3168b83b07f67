#pragma once

#include <cmath>
#include <string>

#include "l2stokes/cutoffs.hpp"
#include "l2stokes/errors.hpp"
#include "l2stokes/model_geometry.hpp"
#include "l2stokes/quadrature.hpp"

namespace l2stokes {

/// The harmonic test form: a nonzero harmonic k-form omega on the target
/// factor, entering the computation only through its squared L^2 norm.
struct HarmonicFormSpec {
    int target = 2;
    long degree = 0;
    double norm_sq = 1.0;
};

/// Radial coefficient of the codifferential applied to nu = psi dr ^ omega:
/// d^t nu = c(r) omega with c(r) = psi'(r) + beta psi(r) / r.
///
/// Sign convention: the orientation dr ^ dvol_1 ^ dvol_2 is taken positive
/// and the star signs are absorbed so that the resulting boundary defect is
/// +Vol(N_1) |omega|^2 psi(0) when beta = 0.
class RadialCodifferential {
public:
    RadialCodifferential(PiecewiseCubic psi, double beta)
        : psi_(std::move(psi)), beta_(beta) {}

    double operator()(double r) const {
        if (r < 0.0) throw parameter_error("radial coordinate must be >= 0");
        if (r == 0.0) {
            if (beta_ == 0.0) return psi_.derivative(0.0);
            if (psi_(0.0) == 0.0) return (1.0 + beta_) * psi_.derivative(0.0);
            throw singular_evaluation_error(
                "codifferential coefficient is singular at r = 0 (beta = " +
                std::to_string(beta_) + ", psi(0) != 0)");
        }
        return psi_.derivative(r) + beta_ * psi_(r) / r;
    }

    double beta() const { return beta_; }
    const PiecewiseCubic& psi() const { return psi_; }

private:
    PiecewiseCubic psi_;
    double beta_;
};

inline RadialCodifferential codifferential_coefficient(const WarpedModel& model,
                                                       const PiecewiseCubic& psi, long k,
                                                       int target) {
    Rational beta = beta_exponent(model, k, target);
    return RadialCodifferential(psi, beta.to_double());
}

struct DefectResult {
    double defect = 0.0;        // (d mu, nu) - (mu, d^t nu)
    double pairing_d = 0.0;     // (d mu, nu); identically 0 since phi' psi == 0
    double pairing_dt = 0.0;    // (mu, d^t nu)
    Rational beta;              // exact boundary exponent
    double volume_factor = 0.0; // Vol(N_1), the non-target factor's volume
    double closed_form = 0.0;   // +Vol(N_1) * norm_sq * psi(0) * [beta == 0]
    double normalized_closed_form = 0.0; // norm_sq * psi(0) * [beta == 0], volume dropped
    double abs_error = 0.0;     // |defect - closed_form|
};

/// Integration-by-parts defect for mu = phi omega, nu = psi dr ^ omega on a
/// two-factor model. Both pairings reduce to weighted 1D integrals:
///   (d mu, nu)    = Vol(N_1) |omega|^2 int phi' psi r^beta dr
///   (mu, d^t nu)  = Vol(N_1) |omega|^2 int phi (psi' + beta psi / r) r^beta dr
/// The contract: |defect - closed_form| <= tol * (1 + |defect|).
inline DefectResult defect(const WarpedModel& model, const CutoffPair& cutoffs,
                           const HarmonicFormSpec& form, double tol) {
    if (model.num_factors() != 2)
        throw unsupported_model_error("defect computation needs a two-factor model");
    if (form.target != 1 && form.target != 2)
        throw parameter_error("target factor must be 1 or 2");
    if (!(form.norm_sq > 0.0)) throw parameter_error("norm_sq must be positive");
    if (!(tol > 0.0)) throw parameter_error("tolerance must be positive");

    const CrossSection& target_section = model.factor(form.target).section;
    if (form.degree < 0 || form.degree > target_section.dim() ||
        target_section.betti(static_cast<std::size_t>(form.degree)) < 1)
        throw parameter_error("target factor carries no harmonic form in degree " +
                              std::to_string(form.degree));

    const Rational beta = beta_exponent(model, form.degree, form.target);
    if (beta < Rational(0))
        throw parameter_error("boundary exponent beta = " + beta.str() +
                              " is negative; only beta >= 0 is supported");
    const double beta_d = beta.to_double();

    const Factor& other = model.factor(form.target == 1 ? 2 : 1);
    const double vol = other.section.volume();
    const double scale = vol * form.norm_sq;

    const PiecewiseCubic& phi = cutoffs.phi;
    const PiecewiseCubic& psi = cutoffs.psi;
    const double s = psi.support_end();
    const double psi0 = psi(0.0);

    // absolute tolerance for each unit integral
    const double unit_tol = tol * (1.0 + scale * std::abs(psi0)) / (8.0 * scale);

    // integration panels must split at every knot of either cutoff so no
    // support sliver can hide between quadrature nodes
    std::vector<double> knots = phi.knots();
    knots.insert(knots.end(), psi.knots().begin(), psi.knots().end());

    // (d mu, nu): phi' psi vanishes identically because psi lives in the
    // plateau of phi; the quadrature confirms it numerically.
    const double int_d = integrate(
        [&](double r) { return phi.derivative(r) * psi(r) * std::pow(r, beta_d); }, 0.0, s,
        unit_tol, knots);

    // (mu, d^t nu) split into the psi' r^beta part and the beta psi r^{beta-1}
    // part; the latter is integrated in the variable u = r^beta so the
    // integrand stays continuous down to 0 for every beta > 0.
    const double int_dt_a = integrate(
        [&](double r) { return phi(r) * psi.derivative(r) * std::pow(r, beta_d); }, 0.0, s,
        unit_tol, knots);
    double int_dt_b = 0.0;
    if (beta_d > 0.0) {
        const double u_end = std::pow(s, beta_d);
        std::vector<double> u_knots;
        for (double t : knots)
            if (t > 0.0) u_knots.push_back(std::pow(t, beta_d));
        int_dt_b = integrate(
            [&](double u) {
                const double r = std::pow(u, 1.0 / beta_d);
                return phi(r) * psi(r);
            },
            0.0, u_end, unit_tol, u_knots);
    }

    DefectResult result;
    result.beta = beta;
    result.volume_factor = vol;
    result.pairing_d = scale * int_d;
    result.pairing_dt = scale * (int_dt_a + int_dt_b);
    result.defect = result.pairing_d - result.pairing_dt;
    result.closed_form = beta == Rational(0) ? scale * psi0 : 0.0;
    result.normalized_closed_form = beta == Rational(0) ? form.norm_sq * psi0 : 0.0;
    result.abs_error = std::abs(result.defect - result.closed_form);
    if (result.abs_error > tol * (1.0 + std::abs(result.defect)))
        throw numeric_error("defect quadrature missed the closed-form boundary term: |" +
                            std::to_string(result.defect) + " - " +
                            std::to_string(result.closed_form) + "| > tol");
    return result;
}

} // namespace l2stokes
