#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "l2stokes/errors.hpp"
#include "l2stokes/model_geometry.hpp"

namespace l2stokes {

enum class Status { Unique, Fails, Unknown };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Unique: return "UNIQUE";
        case Status::Fails: return "FAILS";
        case Status::Unknown: return "UNKNOWN";
    }
    return "?";
}

/// Per-degree answer to "is the closed extension of d unique?", together
/// with the rule that produced it.
struct Verdict {
    Status status = Status::Unknown;
    std::string rule;
    std::string citation;
};

/// The deduction rules this engine is allowed to use. Each entry is a
/// consumed result, stated in full; nothing here is re-proved analytically.
inline const std::map<std::string, std::string>& rule_registry() {
    static const std::map<std::string, std::string> registry = {
        {"cheeger-cone",
         "Cheeger's cone criterion: on the cone over a closed oriented N^n, the minimal and "
         "maximal closed extensions of d coincide iff N carries no square-integrable harmonic "
         "n/2-form; for compact N this is the condition H^{n/2}(N, R) = 0."},
        {"warped-critical-degree",
         "Two-factor warped boundary pairing: if the target factor has nonzero cohomology in the "
         "critical degree k = (alpha_1 n_1 + alpha_2 n_2) / (2 alpha_2), the boundary term of the "
         "pairing survives at r = 0 and the minimal and maximal extensions of d differ on k-forms "
         "supported near the tip."},
        {"kahler-variety-uniqueness",
         "Induced Kaehler metrics on complex projective varieties with isolated singularities: "
         "the Pardon-Stern Hardy estimate (omega/r square-integrable) plus the Friedrichs "
         "identification force d_max = d_min in every degree k != n-1, n, where n is the complex "
         "dimension; star duality and adjoints propagate the base degrees k <= n-2 to the rest."},
        {"middle-degree-open",
         "No applicable rule: uniqueness in the complex-middle degrees n-1, n is an open "
         "question."},
        {"no-applicable-rule",
         "No applicable rule: none of the registered criteria decides this degree."},
        {"hodge-friedrichs-splitting",
         "Operator-level Hodge decomposition: away from degrees n, n+-1 the Friedrichs Laplacian "
         "equals the minimal-extension Laplacian and splits as twice the direct sum of the "
         "Dolbeault Friedrichs Laplacians in bidegrees p+q = k."},
        {"friedrichs-discreteness",
         "Discreteness criterion: compact sublevel complements of 1/r together with the Hardy "
         "bound f/r in L^2 on the Friedrichs domain give a compact resolvent; on complex "
         "projective varieties with isolated singularities this applies in every degree "
         "k != n, n+-1."},
    };
    return registry;
}

/// A verdict whose rule id is checked against the registry.
inline Verdict make_verdict(Status status, const std::string& rule_id) {
    auto it = rule_registry().find(rule_id);
    if (it == rule_registry().end())
        throw parameter_error("unregistered rule id: " + rule_id);
    return Verdict{status, rule_id, it->second};
}

/// Machine-readable form of the per-degree uniqueness statements for one
/// model or variety, plus the optional complex-case extras.
struct StokesReport {
    std::string context;
    std::map<long, Verdict> verdicts; // covers every degree 0..total_dim
    std::optional<std::vector<std::pair<int, int>>> dolbeault_unique_bidegrees;
    std::optional<std::set<long>> hodge_degrees;
    std::optional<std::set<long>> discreteness_degrees;
};

/// Decide L2-Stokes for the (un-truncated) cone over N via the middle
/// cohomology of the link. UNIQUE means it holds in every degree.
inline Verdict cheeger_cone_criterion(const CrossSection& link) {
    bool holds = (link.dim() % 2 != 0) || link.betti(link.dim() / 2) == 0;
    return make_verdict(holds ? Status::Unique : Status::Fails, "cheeger-cone");
}

/// Degrees in which the boundary pairing detects failure on a two-factor
/// model. Both factor orderings are checked; degrees outside the detected
/// set stay UNKNOWN, never UNIQUE.
inline std::set<long> two_factor_failure(const WarpedModel& model) {
    if (model.num_factors() != 2)
        throw unsupported_model_error("two-factor failure analysis needs exactly two factors");
    std::set<long> failing;
    for (int target : {1, 2}) {
        std::optional<long> k = critical_integer_degree(model, target);
        if (!k) continue;
        const CrossSection& section = model.factor(target).section;
        if (*k <= section.dim() && section.betti(static_cast<std::size_t>(*k)) != 0)
            failing.insert(*k);
    }
    return failing;
}

namespace detail {

/// Closure of the uniqueness facts under adjoints and star duality.
/// Facts live on degrees -1..2n; both out-of-range slots correspond to zero
/// operators, whose extensions trivially coincide. The seed dt(-1) is that
/// trivial fact; everything else must be derived from the base.
class UniquenessClosure {
public:
    UniquenessClosure(long two_n, const std::set<long>& base) : two_n_(two_n) {
        if (two_n < 0 || two_n % 2 != 0)
            throw parameter_error("total dimension must be an even integer >= 0");
        d_.assign(static_cast<std::size_t>(two_n) + 2, false);
        dt_.assign(static_cast<std::size_t>(two_n) + 2, false);
        set(dt_, -1); // the zero operator below degree 0; trivially unique
        for (long k : base) {
            if (k < 0 || k > two_n)
                throw parameter_error("base degree out of range [0, 2n]");
            set(d_, k);
            set(dt_, k - 1);
        }
        run();
    }

    std::set<long> derived() const {
        std::set<long> out;
        for (long k = 0; k <= two_n_; ++k)
            if (get(d_, k)) out.insert(k);
        return out;
    }

    /// One more full pass over the rules adds nothing once run() returned.
    bool is_fixpoint() const {
        auto d = d_;
        auto dt = dt_;
        return !apply_rules(d, dt);
    }

private:
    // index shift: slot 0 holds degree -1
    static bool get(const std::vector<bool>& v, long k) {
        return k >= -1 && k + 1 < static_cast<long>(v.size()) && v[static_cast<std::size_t>(k + 1)];
    }
    static void set(std::vector<bool>& v, long k) {
        if (k >= -1 && k + 1 < static_cast<long>(v.size())) v[static_cast<std::size_t>(k + 1)] = true;
    }

    bool apply_rules(std::vector<bool>& d, std::vector<bool>& dt) const {
        bool changed = false;
        for (long j = -1; j <= two_n_; ++j) {
            // adjoints: uniqueness for d and for d^t coincide degree-wise
            if (get(d, j) && !get(dt, j)) { set(dt, j); changed = true; }
            if (get(dt, j) && !get(d, j)) { set(d, j); changed = true; }
            // star duality: d_k is star-conjugate to d^t_{2n-k-1}
            long m = two_n_ - j - 1;
            if (get(d, j) && !get(dt, m)) { set(dt, m); changed = true; }
            if (get(dt, j) && !get(d, m)) { set(d, m); changed = true; }
        }
        return changed;
    }

    void run() {
        while (apply_rules(d_, dt_)) {}
    }

    long two_n_;
    std::vector<bool> d_;
    std::vector<bool> dt_;
};

} // namespace detail

/// Star-duality/adjoint propagation: from base degrees k where the rolled-up
/// operator d_k + d^t_{k-1} has a unique closed extension, derive every
/// degree where d itself does. total_dim = 2n must be even.
inline std::set<long> propagate_uniqueness(long total_dim, const std::set<long>& base) {
    return detail::UniquenessClosure(total_dim, base).derived();
}

/// Degrees where the Friedrichs Laplacian splits into Dolbeault blocks:
/// {0..2n} minus {n-1, n, n+1}.
inline std::set<long> friedrichs_identity_degrees(long n) {
    if (n < 1) throw parameter_error("complex dimension must be >= 1");
    std::set<long> out;
    for (long k = 0; k <= 2 * n; ++k)
        if (k != n - 1 && k != n && k != n + 1) out.insert(k);
    return out;
}

/// The full complex-variety report for complex dimension n: uniqueness away
/// from degrees n-1, n (open there), Dolbeault bidegrees, and the
/// Hodge/discreteness degree sets.
inline StokesReport complex_variety_report(long n) {
    if (n < 1) throw parameter_error("complex dimension must be >= 1");
    StokesReport report;
    report.context =
        "complex projective variety with isolated singularities, complex dimension " +
        std::to_string(n) + ", induced Kaehler metric";
    for (long k = 0; k <= 2 * n; ++k) {
        if (k == n - 1 || k == n)
            report.verdicts[k] = make_verdict(Status::Unknown, "middle-degree-open");
        else
            report.verdicts[k] = make_verdict(Status::Unique, "kahler-variety-uniqueness");
    }
    std::vector<std::pair<int, int>> bidegrees;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            if (p + q != n - 1 && p + q != n) bidegrees.emplace_back(p, q);
    report.dolbeault_unique_bidegrees = std::move(bidegrees);
    report.hodge_degrees = friedrichs_identity_degrees(n);
    report.discreteness_degrees = friedrichs_identity_degrees(n);
    return report;
}

/// UNIQUE degrees of a report.
inline std::set<long> unique_degrees(const StokesReport& report) {
    std::set<long> out;
    for (const auto& [k, v] : report.verdicts)
        if (v.status == Status::Unique) out.insert(k);
    return out;
}

/// Per-degree report for the cone over a link: all degrees UNIQUE when the
/// criterion holds; otherwise the middle degree carries the failure and the
/// remaining degrees are left undecided.
inline StokesReport cone_report(const CrossSection& link) {
    StokesReport report;
    report.context = "cone over " + link.name() + " (dim " + std::to_string(link.dim()) + ")";
    Verdict verdict = cheeger_cone_criterion(link);
    long total = link.dim() + 1;
    for (long k = 0; k <= total; ++k) {
        if (verdict.status == Status::Unique)
            report.verdicts[k] = verdict;
        else if (k == link.dim() / 2)
            report.verdicts[k] = verdict;
        else
            report.verdicts[k] = make_verdict(Status::Unknown, "no-applicable-rule");
    }
    return report;
}

/// Per-degree report for a two-factor model. Also runs the guard that no
/// degree is simultaneously claimed UNIQUE and FAILS by different rules.
inline StokesReport two_factor_report(const WarpedModel& model) {
    StokesReport report;
    report.context = "warped two-factor model (" + model.factor(1).section.name() + ", alpha " +
                     model.factor(1).exponent.str() + ") x (" + model.factor(2).section.name() +
                     ", alpha " + model.factor(2).exponent.str() + ")";
    std::set<long> failing = two_factor_failure(model);

    // Collect every claim any rule makes on this model. Only the boundary
    // pairing applies to two-factor models today; the guard still checks
    // that whatever is collected never contradicts itself.
    std::map<long, std::vector<Verdict>> claims;
    for (long k : failing)
        claims[k].push_back(make_verdict(Status::Fails, "warped-critical-degree"));
    for (const auto& [degree, list] : claims) {
        bool unique = false, fails = false;
        for (const Verdict& v : list) {
            unique = unique || v.status == Status::Unique;
            fails = fails || v.status == Status::Fails;
        }
        if (unique && fails)
            throw inconsistency_error("degree " + std::to_string(degree) +
                                      " claimed both UNIQUE and FAILS");
    }

    for (long k = 0; k <= model.total_dim(); ++k) {
        auto it = claims.find(k);
        report.verdicts[k] = it != claims.end() ? it->second.front()
                                                : make_verdict(Status::Unknown, "no-applicable-rule");
    }
    return report;
}

} // namespace l2stokes
