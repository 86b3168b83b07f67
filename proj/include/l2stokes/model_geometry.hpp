#pragma once

#include <cmath>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "l2stokes/errors.hpp"
#include "l2stokes/rational.hpp"

namespace l2stokes {

/// How the scalar Laplace spectrum of a cross-section is obtained.
enum class SpectrumKind { RoundSphere, FlatTorus, Explicit };

/// One scalar eigenvalue of a cross-section with its multiplicity.
struct Mode {
    double mu = 0.0;
    long multiplicity = 1;
};

/// A closed oriented Riemannian factor: dimension, Betti numbers, volume and
/// a recipe for its scalar spectrum. Only the data consumed downstream is
/// stored; no geometry is ever computed on the factor itself.
class CrossSection {
public:
    /// Round sphere of dimension d and given radius.
    static CrossSection sphere(int dim, double radius = 1.0);

    /// Flat torus R^d / (L_1 Z x ... x L_d Z) with the given side lengths.
    static CrossSection torus(std::vector<double> sides);

    /// Arbitrary factor with user-supplied topology and spectrum.
    static CrossSection with_explicit_spectrum(std::string name, int dim,
                                               std::vector<long> betti, double volume,
                                               std::vector<Mode> modes);

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const std::vector<long>& betti() const { return betti_; }
    long betti(std::size_t k) const { return k < betti_.size() ? betti_[k] : 0; }
    double volume() const { return volume_; }
    SpectrumKind spectrum_kind() const { return kind_; }
    double radius() const { return radius_; }
    const std::vector<double>& sides() const { return sides_; }
    const std::vector<Mode>& explicit_modes() const { return modes_; }

private:
    CrossSection() = default;
    void validate() const;

    std::string name_;
    int dim_ = 0;
    std::vector<long> betti_;
    double volume_ = 0.0;
    SpectrumKind kind_ = SpectrumKind::Explicit;
    double radius_ = 0.0;
    std::vector<double> sides_;
    std::vector<Mode> modes_;
};

/// Riemannian volume of the round d-sphere of given radius:
/// 2 pi^{(d+1)/2} / Gamma((d+1)/2) * radius^d.
inline double sphere_volume(int dim, double radius) {
    double half = 0.5 * (dim + 1);
    return 2.0 * std::pow(M_PI, half) / std::tgamma(half) * std::pow(radius, dim);
}

inline void CrossSection::validate() const {
    if (dim_ < 1) throw parameter_error("cross-section dimension must be >= 1");
    if (betti_.size() != static_cast<std::size_t>(dim_) + 1)
        throw parameter_error("betti list must have dim+1 entries");
    if (betti_[0] < 1) throw parameter_error("betti[0] must be >= 1");
    for (long b : betti_)
        if (b < 0) throw parameter_error("betti numbers must be non-negative");
    for (int k = 0; k <= dim_; ++k)
        if (betti_[k] != betti_[dim_ - k])
            throw parameter_error("betti numbers violate Poincare duality (closed oriented factors only)");
    if (!(volume_ > 0.0)) throw parameter_error("cross-section volume must be positive");
    if (kind_ == SpectrumKind::RoundSphere) {
        double expect = sphere_volume(dim_, radius_);
        if (std::abs(volume_ - expect) > 1e-9 * expect)
            throw parameter_error("sphere volume inconsistent with radius");
    }
    if (kind_ == SpectrumKind::FlatTorus) {
        double expect = 1.0;
        for (double s : sides_) expect *= s;
        if (std::abs(volume_ - expect) > 1e-9 * expect)
            throw parameter_error("torus volume inconsistent with side lengths");
    }
    for (const Mode& m : modes_) {
        if (m.mu < 0.0) throw parameter_error("explicit eigenvalues must be >= 0");
        if (m.multiplicity < 1) throw parameter_error("explicit multiplicities must be >= 1");
    }
}

inline CrossSection CrossSection::sphere(int dim, double radius) {
    if (dim < 1) throw parameter_error("sphere dimension must be >= 1");
    if (!(radius > 0.0)) throw parameter_error("sphere radius must be positive");
    CrossSection s;
    s.name_ = "S^" + std::to_string(dim);
    s.dim_ = dim;
    s.betti_.assign(dim + 1, 0);
    s.betti_.front() = 1;
    s.betti_.back() = 1;
    s.volume_ = sphere_volume(dim, radius);
    s.kind_ = SpectrumKind::RoundSphere;
    s.radius_ = radius;
    s.validate();
    return s;
}

inline CrossSection CrossSection::torus(std::vector<double> sides) {
    if (sides.empty()) throw parameter_error("torus needs at least one side length");
    for (double s : sides)
        if (!(s > 0.0)) throw parameter_error("torus side lengths must be positive");
    CrossSection t;
    int d = static_cast<int>(sides.size());
    t.name_ = "T^" + std::to_string(d);
    t.dim_ = d;
    t.betti_.resize(d + 1);
    for (int k = 0; k <= d; ++k) {
        // binomial(d, k)
        long b = 1;
        for (int i = 0; i < k; ++i) b = b * (d - i) / (i + 1);
        t.betti_[k] = b;
    }
    t.volume_ = 1.0;
    for (double s : sides) t.volume_ *= s;
    t.kind_ = SpectrumKind::FlatTorus;
    t.sides_ = std::move(sides);
    t.validate();
    return t;
}

inline CrossSection CrossSection::with_explicit_spectrum(std::string name, int dim,
                                                         std::vector<long> betti, double volume,
                                                         std::vector<Mode> modes) {
    CrossSection c;
    c.name_ = std::move(name);
    c.dim_ = dim;
    c.betti_ = std::move(betti);
    c.volume_ = volume;
    c.kind_ = SpectrumKind::Explicit;
    c.modes_ = std::move(modes);
    c.validate();
    return c;
}

/// One factor of a warped product: a cross-section scaled by r^exponent.
struct Factor {
    CrossSection section;
    Rational exponent; // alpha_i >= 1
};

/// The model space (0,infinity) x N_1 [x N_2] with metric
/// dr^2 + r^{2 alpha_1} g_1 [+ r^{2 alpha_2} g_2]. One or two factors.
class WarpedModel {
public:
    explicit WarpedModel(Factor f1) { init({std::move(f1)}); }
    WarpedModel(Factor f1, Factor f2) { init({std::move(f1), std::move(f2)}); }

    int num_factors() const { return static_cast<int>(factors_.size()); }

    /// Factors are addressed 1-based to match the alpha_1/alpha_2 convention.
    const Factor& factor(int index) const {
        if (index < 1 || index > num_factors())
            throw parameter_error("factor index out of range");
        return factors_[static_cast<std::size_t>(index - 1)];
    }

    int total_dim() const {
        int d = 1;
        for (const Factor& f : factors_) d += f.section.dim();
        return d;
    }

private:
    void init(std::vector<Factor> fs) {
        factors_ = std::move(fs);
        for (const Factor& f : factors_)
            if (f.exponent < Rational(1))
                throw parameter_error("warping exponent alpha must be >= 1, got " + f.exponent.str());
    }

    std::vector<Factor> factors_;
};

/// Degree at which the boundary pairing survives for k-forms pulled back
/// from the target factor: k = (alpha_1 n_1 + alpha_2 n_2) / (2 alpha_2),
/// with index 2 naming the target factor and index 1 the other one.
inline Rational critical_degree(const WarpedModel& model, int target) {
    if (model.num_factors() != 2)
        throw unsupported_model_error("critical degree needs a two-factor model");
    if (target != 1 && target != 2) throw parameter_error("target factor must be 1 or 2");
    const Factor& tgt = model.factor(target);
    const Factor& oth = model.factor(target == 1 ? 2 : 1);
    Rational weighted = oth.exponent * Rational(oth.section.dim()) +
                        tgt.exponent * Rational(tgt.section.dim());
    return weighted / (Rational(2) * tgt.exponent);
}

/// critical_degree when it is an integer within [0, total_dim]; NONE otherwise.
inline std::optional<long> critical_integer_degree(const WarpedModel& model, int target) {
    Rational k = critical_degree(model, target);
    if (!k.is_integer()) return std::nullopt;
    long v = k.as_integer();
    if (v < 0 || v > model.total_dim()) return std::nullopt;
    return v;
}

/// Radial exponent of the boundary term produced by a degree-k pullback form
/// from the target factor: beta = alpha_1 n_1 + alpha_2 (n_2 - 2k).
inline Rational beta_exponent(const WarpedModel& model, long k, int target) {
    if (model.num_factors() != 2)
        throw unsupported_model_error("beta exponent needs a two-factor model");
    if (target != 1 && target != 2) throw parameter_error("target factor must be 1 or 2");
    if (k < 0 || k > model.total_dim() - 1)
        throw degree_error("degree k must lie in [0, total_dim-1]");
    const Factor& tgt = model.factor(target);
    const Factor& oth = model.factor(target == 1 ? 2 : 1);
    return oth.exponent * Rational(oth.section.dim()) +
           tgt.exponent * (Rational(tgt.section.dim()) - Rational(2) * Rational(k));
}

/// Radial exponent of the Riemannian volume density: sum alpha_i n_i.
inline Rational volume_weight(const WarpedModel& model) {
    Rational w(0);
    for (int i = 1; i <= model.num_factors(); ++i) {
        const Factor& f = model.factor(i);
        w = w + f.exponent * Rational(f.section.dim());
    }
    return w;
}

/// Radial exponent of the pointwise norm of a pulled-back k-form from the
/// target factor: -2 alpha_target k.
inline Rational form_norm_weight(const WarpedModel& model, int target, long k) {
    const Factor& f = model.factor(target);
    return Rational(-2) * f.exponent * Rational(k);
}

} // namespace l2stokes
