#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "l2stokes/errors.hpp"

namespace l2stokes {

/// C^1 piecewise-cubic function on [0, infinity), identically zero past the
/// last breakpoint. Built from Hermite data (values and slopes at the
/// breakpoints), which makes C^1 continuity hold by construction.
class PiecewiseCubic {
public:
    /// C^1 interpolant through (knots[i], values[i]) with slopes[i] there.
    /// Zero beyond the last knot, so the last value/slope must both vanish.
    static PiecewiseCubic hermite(std::vector<double> knots, const std::vector<double>& values,
                                  const std::vector<double>& slopes) {
        if (knots.size() < 2 || values.size() != knots.size() || slopes.size() != knots.size())
            throw parameter_error("hermite data needs matching knots/values/slopes, >= 2 knots");
        for (std::size_t i = 0; i + 1 < knots.size(); ++i)
            if (!(knots[i] < knots[i + 1]))
                throw parameter_error("hermite knots must be strictly increasing");
        if (knots.front() != 0.0)
            throw parameter_error("cutoff functions are defined from r = 0");
        if (values.back() != 0.0 || slopes.back() != 0.0)
            throw parameter_error("cutoff must reach zero with zero slope at its support end");

        PiecewiseCubic f;
        f.knots_ = std::move(knots);
        f.coeffs_.resize(f.knots_.size() - 1);
        for (std::size_t i = 0; i + 1 < f.knots_.size(); ++i) {
            const double h = f.knots_[i + 1] - f.knots_[i];
            const double v0 = values[i], v1 = values[i + 1];
            const double s0 = slopes[i], s1 = slopes[i + 1];
            // cubic in t = r - knots[i]
            const double c2 = (3.0 * (v1 - v0) / h - 2.0 * s0 - s1) / h;
            const double c3 = (2.0 * (v0 - v1) / h + s0 + s1) / (h * h);
            f.coeffs_[i] = {v0, s0, c2, c3};
        }
        return f;
    }

    /// 1 on [0, a], cubic descent to 0 on [a, b], 0 afterwards.
    static PiecewiseCubic plateau_cutoff(double a, double b) {
        if (!(0.0 < a && a < b)) throw parameter_error("plateau cutoff needs 0 < a < b");
        return hermite({0.0, a, b}, {1.0, 1.0, 0.0}, {0.0, 0.0, 0.0});
    }

    /// value at 0, cubic descent to 0 at a, 0 afterwards.
    static PiecewiseCubic bump_at_zero(double a, double value = 1.0) {
        if (!(a > 0.0)) throw parameter_error("bump width must be positive");
        return hermite({0.0, a}, {value, 0.0}, {0.0, 0.0});
    }

    double operator()(double r) const {
        if (r < 0.0) throw parameter_error("cutoffs are defined on [0, infinity)");
        std::size_t i = piece(r);
        if (i >= coeffs_.size()) return 0.0;
        const double t = r - knots_[i];
        const auto& c = coeffs_[i];
        return c[0] + t * (c[1] + t * (c[2] + t * c[3]));
    }

    double derivative(double r) const {
        if (r < 0.0) throw parameter_error("cutoffs are defined on [0, infinity)");
        std::size_t i = piece(r);
        if (i >= coeffs_.size()) return 0.0;
        const double t = r - knots_[i];
        const auto& c = coeffs_[i];
        return c[1] + t * (2.0 * c[2] + t * 3.0 * c[3]);
    }

    /// Support is contained in [0, support_end()].
    double support_end() const { return knots_.back(); }

    /// Largest x such that the function is identically 1 on [0, x]; 0 when
    /// the first piece is not constant 1.
    double plateau_end() const {
        double end = 0.0;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const auto& c = coeffs_[i];
            if (c[0] == 1.0 && c[1] == 0.0 && c[2] == 0.0 && c[3] == 0.0)
                end = knots_[i + 1];
            else
                break;
        }
        return end;
    }

    const std::vector<double>& knots() const { return knots_; }

private:
    std::size_t piece(double r) const {
        std::size_t i = 0;
        while (i + 1 < knots_.size() && r >= knots_[i + 1]) ++i;
        if (i + 1 == knots_.size()) return coeffs_.size(); // beyond support
        return i;
    }

    std::vector<double> knots_;
    std::vector<std::array<double, 4>> coeffs_; // value, slope, quadratic, cubic per piece
};

/// The test pair of Lemma-style boundary computations: phi is 1 near zero
/// and compactly supported; psi is supported inside the plateau of phi.
struct CutoffPair {
    PiecewiseCubic phi;
    PiecewiseCubic psi;

    CutoffPair(PiecewiseCubic phi_fn, PiecewiseCubic psi_fn)
        : phi(std::move(phi_fn)), psi(std::move(psi_fn)) {
        if (phi(0.0) != 1.0)
            throw parameter_error("phi must equal 1 near r = 0");
        const double plateau = phi.plateau_end();
        if (!(plateau > 0.0))
            throw parameter_error("phi must be identically 1 on an initial interval");
        if (psi.support_end() > plateau)
            throw parameter_error("psi must be supported where phi is identically 1");
        if (!std::isfinite(psi(0.0)))
            throw parameter_error("psi(0) must be finite");
    }

    /// phi = 1 on [0, 1/4] descending to 0 at 1/2; psi supported in [0, 1/4]
    /// with psi(0) = 1.
    static CutoffPair standard() {
        return CutoffPair(PiecewiseCubic::plateau_cutoff(0.25, 0.5),
                          PiecewiseCubic::bump_at_zero(0.25, 1.0));
    }
};

} // namespace l2stokes
