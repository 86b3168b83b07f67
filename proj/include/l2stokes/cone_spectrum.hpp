#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "l2stokes/bessel.hpp"
#include "l2stokes/errors.hpp"
#include "l2stokes/model_geometry.hpp"

namespace l2stokes {

/// The reduced singular problem on (0, R]:
///   -u'' + (nu^2 - 1/4) r^{-2} u = lambda u,
/// Dirichlet at r = R, Friedrichs extension at r = 0 (the u ~ r^{nu + 1/2}
/// branch, i.e. the quadratic-form closure of the compactly supported core).
struct SingularRadialProblem {
    double nu = 0.0;
    double radius = 1.0;

    SingularRadialProblem(double nu_, double radius_) : nu(nu_), radius(radius_) {
        if (!(nu >= 0.0)) throw parameter_error("radial index nu must be >= 0");
        if (!(radius > 0.0)) throw parameter_error("outer radius must be positive");
    }
};

/// Weyl classification of the singular endpoint r = 0 of the reduced
/// operator. LIMIT_POINT (no boundary condition needed) iff nu >= 1;
/// the borderline nu = 1 is limit point.
enum class EndpointClass { LimitCircle, LimitPoint };

inline EndpointClass classify_endpoint(double nu) {
    if (!(nu >= 0.0)) throw parameter_error("radial index nu must be >= 0");
    return nu < 1.0 ? EndpointClass::LimitCircle : EndpointClass::LimitPoint;
}

/// Separation of variables on dr^2 + r^2 g_N: a cross-section mode with
/// eigenvalue mu on N^d reduces to the radial index
/// nu = sqrt(mu + (d-1)^2 / 4).
inline double ode_index(double mu, int dim) {
    if (!(mu >= 0.0)) throw parameter_error("cross-section eigenvalue must be >= 0");
    if (dim < 1) throw parameter_error("cross-section dimension must be >= 1");
    const double half = 0.5 * (dim - 1);
    return std::sqrt(mu + half * half);
}

/// Lowest `count` eigenvalues of the Friedrichs extension: (j_{nu,i} / R)^2
/// with j_{nu,i} the i-th positive zero of J_nu.
inline std::vector<double> friedrichs_spectrum(const SingularRadialProblem& problem, int count) {
    if (count < 1) throw parameter_error("eigenvalue count must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i) {
        const double z = bessel_j_zero(problem.nu, i);
        out.push_back((z / problem.radius) * (z / problem.radius));
    }
    return out;
}

/// All scalar modes of the cross-section with mu <= cutoff, with exact
/// multiplicities, sorted by mu.
inline std::vector<Mode> cross_section_spectrum(const CrossSection& section, double cutoff) {
    if (!(cutoff >= 0.0)) throw parameter_error("spectrum cutoff must be >= 0");
    std::vector<Mode> modes;
    switch (section.spectrum_kind()) {
        case SpectrumKind::RoundSphere: {
            const int d = section.dim();
            const double r2 = section.radius() * section.radius();
            for (long l = 0;; ++l) {
                const double mu = static_cast<double>(l) * (l + d - 1) / r2;
                if (mu > cutoff) break;
                long mult = 1;
                if (l >= 1) {
                    // dim of degree-l spherical harmonics: C(l+d, d) - C(l+d-2, d)
                    auto binom = [](long n, long k) {
                        long b = 1;
                        for (long i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
                        return b;
                    };
                    mult = binom(l + d, d) - binom(l + d - 2, d);
                }
                modes.push_back({mu, mult});
            }
            break;
        }
        case SpectrumKind::FlatTorus: {
            const auto& sides = section.sides();
            const int d = static_cast<int>(sides.size());
            // lattice enumeration of mu = sum (2 pi m_i / L_i)^2 <= cutoff
            std::vector<long> bound(d);
            for (int i = 0; i < d; ++i)
                bound[i] = static_cast<long>(std::floor(sides[i] * std::sqrt(cutoff) / (2.0 * M_PI)));
            std::vector<long> m(d, 0);
            std::vector<double> mus;
            for (int i = 0; i < d; ++i) m[i] = -bound[i];
            while (true) {
                double mu = 0.0;
                for (int i = 0; i < d; ++i) {
                    const double w = 2.0 * M_PI * m[i] / sides[i];
                    mu += w * w;
                }
                if (mu <= cutoff) mus.push_back(mu);
                int idx = 0;
                while (idx < d) {
                    if (++m[idx] <= bound[idx]) break;
                    m[idx] = -bound[idx];
                    ++idx;
                }
                if (idx == d) break;
            }
            std::sort(mus.begin(), mus.end());
            for (std::size_t i = 0; i < mus.size();) {
                std::size_t j = i;
                while (j < mus.size() && mus[j] <= mus[i] + 1e-12 * (1.0 + mus[i])) ++j;
                modes.push_back({mus[i], static_cast<long>(j - i)});
                i = j;
            }
            break;
        }
        case SpectrumKind::Explicit: {
            for (const Mode& m : section.explicit_modes())
                if (m.mu <= cutoff) modes.push_back(m);
            std::sort(modes.begin(), modes.end(),
                      [](const Mode& a, const Mode& b) { return a.mu < b.mu; });
            break;
        }
    }
    return modes;
}

/// One merged line of a cone spectrum: an eigenvalue, its aggregated
/// multiplicity and the (mu, branch) label of the lowest mode producing it.
struct SpectrumEntry {
    double eigenvalue = 0.0;
    long multiplicity = 0;
    double mu = 0.0;
    int branch = 0;
};

/// Sorted eigenvalue table with strictly increasing entries and finite
/// multiplicities -- the machine-checkable shadow of discreteness.
struct SpectrumTable {
    std::vector<SpectrumEntry> entries;

    void validate() const {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].multiplicity < 1)
                throw inconsistency_error("spectrum table multiplicity must be >= 1");
            if (i > 0 && !(entries[i - 1].eigenvalue < entries[i].eigenvalue))
                throw inconsistency_error("spectrum table must be strictly increasing");
        }
    }

    long total_multiplicity() const {
        long t = 0;
        for (const auto& e : entries) t += e.multiplicity;
        return t;
    }
};

/// Lowest eigenvalues (counted with multiplicity, at least `count` of them)
/// of the Friedrichs scalar Laplacian on the truncated cone over N with
/// Dirichlet condition at r = R.
///
/// Certification: generated spectra (sphere/torus) enlarge the mode cutoff
/// until every excluded cross-section mode provably lies above the reported
/// maximum, using j_{nu,1} > nu >= sqrt(mu). Explicit spectra are taken as
/// complete by definition.
inline SpectrumTable scalar_cone_spectrum(const CrossSection& section, double radius, int count) {
    if (!(radius > 0.0)) throw parameter_error("outer radius must be positive");
    if (count < 1) throw parameter_error("eigenvalue count must be >= 1");
    if (section.spectrum_kind() == SpectrumKind::Explicit && section.explicit_modes().empty())
        throw mode_budget_error("explicit cross-section provides no modes");

    struct Candidate {
        double lambda;
        long multiplicity;
        double mu;
        int branch;
    };

    const double r2 = radius * radius;

    // Working bound: the count-th eigenvalue of the lowest branch alone
    // already dominates the final table maximum. Generated spectra always
    // start at mu = 0 (constants); explicit ones start at their smallest
    // listed mode.
    double mu_min = 0.0;
    if (section.spectrum_kind() == SpectrumKind::Explicit) {
        mu_min = section.explicit_modes().front().mu;
        for (const Mode& m : section.explicit_modes()) mu_min = std::min(mu_min, m.mu);
    }
    const double nu_min = ode_index(mu_min, section.dim());
    const double z_top = bessel_j_zero(nu_min, count);
    const double bound = (z_top / radius) * (z_top / radius);

    double cutoff = bound * r2 + 1.0;
    std::vector<Candidate> candidates;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 8)
            throw mode_budget_error("mode cutoff enlargement failed to certify the spectrum");
        candidates.clear();
        const auto modes = cross_section_spectrum(section, cutoff);
        for (const Mode& m : modes) {
            const double nu = ode_index(m.mu, section.dim());
            for (int i = 1;; ++i) {
                const double z = bessel_j_zero(nu, i);
                const double lambda = (z / radius) * (z / radius);
                if (lambda > bound) break;
                candidates.push_back({lambda, m.multiplicity, m.mu, i});
            }
        }
        std::sort(candidates.begin(), candidates.end(),
                  [](const Candidate& a, const Candidate& b) { return a.lambda < b.lambda; });

        long accumulated = 0;
        double lambda_max = 0.0;
        for (const Candidate& c : candidates) {
            accumulated += c.multiplicity;
            lambda_max = c.lambda;
            if (accumulated >= count) break;
        }
        if (accumulated < count)
            throw mode_budget_error("cross-section supplied only " + std::to_string(accumulated) +
                                    " modes below the working bound, need " +
                                    std::to_string(count));
        // certified when every excluded mode mu' > cutoff satisfies
        // (j_{nu',1}/R)^2 > nu'^2 / R^2 >= mu'/R^2 > lambda_max
        if (section.spectrum_kind() == SpectrumKind::Explicit || cutoff >= lambda_max * r2) break;
        cutoff = lambda_max * r2 * 1.01 + 1.0;
    }

    SpectrumTable table;
    long accumulated = 0;
    std::size_t i = 0;
    while (i < candidates.size() && accumulated < count) {
        std::size_t j = i;
        SpectrumEntry entry{candidates[i].lambda, 0, candidates[i].mu, candidates[i].branch};
        while (j < candidates.size() &&
               candidates[j].lambda <= candidates[i].lambda * (1.0 + 1e-9)) {
            entry.multiplicity += candidates[j].multiplicity;
            ++j;
        }
        table.entries.push_back(entry);
        accumulated += entry.multiplicity;
        i = j;
    }
    table.validate();
    return table;
}

} // namespace l2stokes
