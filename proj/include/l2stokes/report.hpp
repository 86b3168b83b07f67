#pragma once

#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "l2stokes/cone_spectrum.hpp"
#include "l2stokes/model_geometry.hpp"
#include "l2stokes/pairing_defect.hpp"
#include "l2stokes/stokes_rules.hpp"
#include "l2stokes/variety_lab.hpp"
#include "l2stokes/version.hpp"

namespace l2stokes {

using json = nlohmann::ordered_json;

/// Round to 12 significant digits so serialized reports are byte-stable
/// across runs and platforms.
inline double round_sig(double x, int digits = 12) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

inline json to_json(const Verdict& v) {
    return json{{"status", to_string(v.status)}, {"rule", v.rule}};
}

inline json to_json(const StokesReport& report) {
    json verdicts = json::array();
    for (const auto& [degree, verdict] : report.verdicts) {
        json v;
        v["degree"] = degree;
        v["status"] = to_string(verdict.status);
        v["rule"] = verdict.rule;
        verdicts.push_back(v);
    }
    json out;
    out["context"] = report.context;
    out["verdicts"] = verdicts;
    if (report.dolbeault_unique_bidegrees) {
        json bi = json::array();
        for (const auto& [p, q] : *report.dolbeault_unique_bidegrees)
            bi.push_back(json::array({p, q}));
        out["dolbeault_unique_bidegrees"] = bi;
    }
    if (report.hodge_degrees) out["hodge_degrees"] = *report.hodge_degrees;
    if (report.discreteness_degrees) out["discreteness_degrees"] = *report.discreteness_degrees;
    return out;
}

inline json to_json(const CrossSection& section) {
    json out;
    out["name"] = section.name();
    out["dim"] = section.dim();
    out["betti"] = section.betti();
    out["volume"] = round_sig(section.volume());
    switch (section.spectrum_kind()) {
        case SpectrumKind::RoundSphere:
            out["spectrum"] = {{"kind", "round_sphere"}, {"radius", round_sig(section.radius())}};
            break;
        case SpectrumKind::FlatTorus: {
            json sides = json::array();
            for (double s : section.sides()) sides.push_back(round_sig(s));
            out["spectrum"] = {{"kind", "flat_torus"}, {"sides", sides}};
            break;
        }
        case SpectrumKind::Explicit: {
            json modes = json::array();
            for (const Mode& m : section.explicit_modes())
                modes.push_back({{"mu", round_sig(m.mu)}, {"multiplicity", m.multiplicity}});
            out["spectrum"] = {{"kind", "explicit"}, {"modes", modes}};
            break;
        }
    }
    return out;
}

inline json to_json(const WarpedModel& model) {
    json factors = json::array();
    for (int i = 1; i <= model.num_factors(); ++i) {
        const Factor& f = model.factor(i);
        json fj;
        fj["section"] = to_json(f.section);
        fj["alpha"] = f.exponent.str();
        factors.push_back(fj);
    }
    return json{{"factors", factors}, {"total_dim", model.total_dim()}};
}

inline json to_json(const SpectrumTable& table) {
    json entries = json::array();
    for (const SpectrumEntry& e : table.entries) {
        entries.push_back({{"eigenvalue", round_sig(e.eigenvalue)},
                           {"multiplicity", e.multiplicity},
                           {"mu", round_sig(e.mu)},
                           {"branch", e.branch}});
    }
    return json{{"entries", entries}, {"total_multiplicity", table.total_multiplicity()}};
}

inline json to_json(const DefectResult& d) {
    json out;
    out["beta"] = d.beta.str();
    out["defect"] = round_sig(d.defect);
    out["pairing_d"] = round_sig(d.pairing_d);
    out["pairing_dt"] = round_sig(d.pairing_dt);
    out["volume_factor"] = round_sig(d.volume_factor);
    out["closed_form"] = round_sig(d.closed_form);
    out["normalized_closed_form"] = round_sig(d.normalized_closed_form);
    out["abs_error"] = round_sig(d.abs_error);
    return out;
}

inline json to_json(const SingularSetDescription& s) {
    json out;
    out["isolated_point"] = "[0,0,1]";
    if (s.has_stratum)
        out["stratum"] = {{"description", "{[0,y,0]} = RP^" + std::to_string(s.stratum_dim)},
                          {"dim", s.stratum_dim}};
    out["audit"] = {{"smooth_samples", s.audit.smooth_samples},
                    {"min_gradient_norm_smooth", round_sig(s.audit.min_gradient_norm_smooth)},
                    {"max_gradient_norm_singular", round_sig(s.audit.max_gradient_norm_singular)},
                    {"stratum_samples", s.audit.stratum_samples},
                    {"passed", s.audit.passed}};
    return out;
}

inline json to_json(const DistortionReport& d) {
    return json{{"samples", d.samples},
                {"r_max", round_sig(d.r_max)},
                {"max_ratio", round_sig(d.max_ratio)},
                {"min_ratio", round_sig(d.min_ratio)},
                {"max_radial_ratio", round_sig(d.max_radial_ratio)},
                {"closed_form_bound", round_sig(d.bound)}};
}

/// Citation objects for every rule id used in a report body.
inline json citations_for(const std::set<std::string>& rule_ids) {
    json out = json::array();
    for (const std::string& id : rule_ids) {
        auto it = rule_registry().find(id);
        if (it == rule_registry().end()) throw parameter_error("unregistered rule id: " + id);
        out.push_back({{"rule", id}, {"statement", it->second}});
    }
    return out;
}

inline std::set<std::string> rules_used(const StokesReport& report) {
    std::set<std::string> ids;
    for (const auto& [degree, verdict] : report.verdicts) ids.insert(verdict.rule);
    return ids;
}

/// Assemble the top-level report document.
inline json make_report(const std::string& command, json inputs, json results, json citations,
                        double elapsed_ms) {
    json out;
    out["command"] = command;
    out["inputs"] = std::move(inputs);
    out["results"] = std::move(results);
    out["citations"] = std::move(citations);
    out["version"] = version;
    out["elapsed_ms"] = round_sig(elapsed_ms, 4);
    return out;
}

} // namespace l2stokes
