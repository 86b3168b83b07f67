// l2st: batch front-end for the L2-Stokes analysis library.
//
// Verbs: cone, two-factor, complex, defect, spectrum, variety.
// Reports are JSON documents on stdout (or --output FILE); spectra can also
// be emitted as a delimited table. Exit codes: 0 success, 2 validation
// error, 3 numeric error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "l2stokes/l2stokes.hpp"

namespace {

using l2stokes::json;

struct OutputOpts {
    std::string output; // empty = stdout
    std::string format = "json";
};

// ---------------------------------------------------------------------------
// flat key = value config files; flags given on the command line win
// ---------------------------------------------------------------------------

std::vector<std::string> read_config_tokens(const std::string& path,
                                            const std::vector<std::string>& existing) {
    std::ifstream in(path);
    if (!in) throw l2stokes::parameter_error("cannot open config file: " + path);
    std::vector<std::string> tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw l2stokes::parameter_error("config line " + std::to_string(lineno) +
                                            " is not 'key = value'");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw l2stokes::parameter_error("config line " + std::to_string(lineno) +
                                            " has an empty key or value");
        std::string flag = "--" + key;
        bool overridden = false;
        for (const std::string& t : existing)
            if (t == flag || t.rfind(flag + "=", 0) == 0) overridden = true;
        if (overridden) continue;
        tokens.push_back(flag);
        tokens.push_back(value);
    }
    return tokens;
}

// ---------------------------------------------------------------------------
// cross-section options shared by several verbs
// ---------------------------------------------------------------------------

struct SectionOpts {
    std::optional<int> sphere_dim;
    double radius = 1.0;
    std::vector<double> torus_sides;
    std::vector<long> betti;
    double volume = 0.0;
    std::vector<std::string> modes; // "mu:multiplicity"
    std::string name = "custom";
};

void add_section_options(CLI::App* cmd, SectionOpts& opts, const std::string& suffix,
                         const std::string& what) {
    cmd->add_option("--sphere" + suffix, opts.sphere_dim,
                    "round sphere: dimension of " + what);
    cmd->add_option("--radius" + suffix, opts.radius, "sphere radius (default 1)");
    cmd->add_option("--torus" + suffix, opts.torus_sides,
                    "flat torus: comma-separated side lengths")
        ->delimiter(',');
    cmd->add_option("--betti" + suffix, opts.betti,
                    "custom factor: comma-separated Betti numbers b_0..b_d")
        ->delimiter(',');
    cmd->add_option("--volume" + suffix, opts.volume, "custom factor volume");
    cmd->add_option("--modes" + suffix, opts.modes,
                    "custom factor spectrum, entries mu:multiplicity")
        ->delimiter(',');
}

l2stokes::CrossSection build_section(const SectionOpts& opts) {
    int given = 0;
    given += opts.sphere_dim.has_value() ? 1 : 0;
    given += opts.torus_sides.empty() ? 0 : 1;
    given += opts.betti.empty() ? 0 : 1;
    if (given != 1)
        throw l2stokes::parameter_error(
            "specify exactly one cross-section: --sphere D, --torus L1,..., or --betti b0,...");
    if (opts.sphere_dim) return l2stokes::CrossSection::sphere(*opts.sphere_dim, opts.radius);
    if (!opts.torus_sides.empty()) return l2stokes::CrossSection::torus(opts.torus_sides);

    std::vector<l2stokes::Mode> modes;
    for (const std::string& entry : opts.modes) {
        auto colon = entry.find(':');
        if (colon == std::string::npos)
            throw l2stokes::parameter_error("mode entry '" + entry + "' is not mu:multiplicity");
        l2stokes::Mode m;
        m.mu = std::stod(entry.substr(0, colon));
        m.multiplicity = std::stol(entry.substr(colon + 1));
        modes.push_back(m);
    }
    if (!(opts.volume > 0.0))
        throw l2stokes::parameter_error("custom cross-section needs --volume > 0");
    return l2stokes::CrossSection::with_explicit_spectrum(
        opts.name, static_cast<int>(opts.betti.size()) - 1, opts.betti, opts.volume, modes);
}

// ---------------------------------------------------------------------------
// report output
// ---------------------------------------------------------------------------

void emit(const std::string& text, const OutputOpts& out) {
    if (out.output.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream file(out.output);
        if (!file) throw l2stokes::parameter_error("cannot open output file: " + out.output);
        file << text << "\n";
    }
}

void emit_report(const json& report, const OutputOpts& out) {
    emit(report.dump(2), out);
}

std::string spectrum_table_text(const l2stokes::SpectrumTable& table) {
    std::ostringstream os;
    os << "eigenvalue\tmultiplicity\tmu\tbranch";
    for (const auto& e : table.entries) {
        os << "\n"
           << l2stokes::round_sig(e.eigenvalue) << "\t" << e.multiplicity << "\t"
           << l2stokes::round_sig(e.mu) << "\t" << e.branch;
    }
    return os.str();
}

class Timer {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

// ---------------------------------------------------------------------------
// verbs
// ---------------------------------------------------------------------------

int run_cone(const SectionOpts& section_opts, const OutputOpts& out) {
    Timer timer;
    auto link = build_section(section_opts);
    auto report = l2stokes::cone_report(link);
    auto verdict = l2stokes::cheeger_cone_criterion(link);

    json inputs;
    inputs["link"] = l2stokes::to_json(link);
    json result;
    result["criterion"] = l2stokes::to_string(verdict.status);
    result["rule"] = verdict.rule;
    result["report"] = l2stokes::to_json(report);
    json doc = l2stokes::make_report("cone", inputs, json::array({result}),
                                     l2stokes::citations_for(l2stokes::rules_used(report)),
                                     timer.elapsed_ms());
    emit_report(doc, out);
    return 0;
}

int run_two_factor(const SectionOpts& s1, const std::string& alpha1, const SectionOpts& s2,
                   const std::string& alpha2, const OutputOpts& out) {
    Timer timer;
    l2stokes::WarpedModel model({build_section(s1), l2stokes::Rational::parse(alpha1)},
                                {build_section(s2), l2stokes::Rational::parse(alpha2)});
    auto report = l2stokes::two_factor_report(model);
    auto failing = l2stokes::two_factor_failure(model);

    json inputs;
    inputs["model"] = l2stokes::to_json(model);
    json result;
    result["failure_degrees"] = failing;
    json criticals = json::array();
    for (int target : {1, 2}) {
        auto k = l2stokes::critical_degree(model, target);
        criticals.push_back({{"target", target},
                             {"critical_degree", k.str()},
                             {"integer", k.is_integer()},
                             {"beta_at_critical", k.is_integer()
                                  ? json(l2stokes::beta_exponent(model, k.as_integer(), target).str())
                                  : json(nullptr)}});
    }
    result["critical_degrees"] = criticals;
    result["report"] = l2stokes::to_json(report);
    json doc = l2stokes::make_report("two-factor", inputs, json::array({result}),
                                     l2stokes::citations_for(l2stokes::rules_used(report)),
                                     timer.elapsed_ms());
    emit_report(doc, out);
    return 0;
}

int run_complex(int dim, const OutputOpts& out) {
    Timer timer;
    auto report = l2stokes::complex_variety_report(dim);
    json inputs;
    inputs["dim"] = dim;
    json doc = l2stokes::make_report("complex", inputs,
                                     json::array({l2stokes::to_json(report)}),
                                     l2stokes::citations_for(l2stokes::rules_used(report)),
                                     timer.elapsed_ms());
    emit_report(doc, out);
    return 0;
}

int run_defect(const SectionOpts& s1, const std::string& alpha1, const SectionOpts& s2,
               const std::string& alpha2, long k, int target, double norm_sq, double plateau_a,
               double plateau_b, double psi_a, double psi0, double tol, const OutputOpts& out) {
    Timer timer;
    l2stokes::WarpedModel model({build_section(s1), l2stokes::Rational::parse(alpha1)},
                                {build_section(s2), l2stokes::Rational::parse(alpha2)});
    l2stokes::CutoffPair cutoffs(l2stokes::PiecewiseCubic::plateau_cutoff(plateau_a, plateau_b),
                                 l2stokes::PiecewiseCubic::bump_at_zero(psi_a, psi0));
    l2stokes::HarmonicFormSpec form{target, k, norm_sq};
    auto result = l2stokes::defect(model, cutoffs, form, tol);

    json inputs;
    inputs["model"] = l2stokes::to_json(model);
    inputs["k"] = k;
    inputs["target"] = target;
    inputs["norm_sq"] = l2stokes::round_sig(norm_sq);
    inputs["cutoffs"] = {{"plateau_a", plateau_a},
                         {"plateau_b", plateau_b},
                         {"psi_a", psi_a},
                         {"psi0", psi0}};
    inputs["tol"] = tol;
    json body = l2stokes::to_json(result);
    body["model"] = l2stokes::to_json(model);
    body["k"] = k;
    json doc = l2stokes::make_report("defect", inputs, json::array({body}),
                                     l2stokes::citations_for({"warped-critical-degree"}),
                                     timer.elapsed_ms());
    emit_report(doc, out);
    return 0;
}

int run_spectrum(const SectionOpts& section_opts, double radius, int count,
                 const OutputOpts& out) {
    Timer timer;
    auto link = build_section(section_opts);
    auto table = l2stokes::scalar_cone_spectrum(link, radius, count);

    if (out.format == "table") {
        emit(spectrum_table_text(table), out);
        return 0;
    }
    json inputs;
    inputs["link"] = l2stokes::to_json(link);
    inputs["radius"] = l2stokes::round_sig(radius);
    inputs["count"] = count;
    json doc = l2stokes::make_report("spectrum", inputs,
                                     json::array({l2stokes::to_json(table)}),
                                     l2stokes::citations_for({"friedrichs-discreteness"}),
                                     timer.elapsed_ms());
    emit_report(doc, out);
    return 0;
}

int run_variety(int n, int m, int p, int q, long samples, unsigned seed, double r_min,
                double r_max, const OutputOpts& out) {
    Timer timer;
    l2stokes::VarietyParams params(n, m, p, q);
    auto sing_v = l2stokes::variety_singular_set(params, l2stokes::VarietyKind::V, samples, seed);
    auto sing_w = l2stokes::variety_singular_set(params, l2stokes::VarietyKind::W, samples, seed);
    auto model = l2stokes::quasi_isometry_model(params);
    auto condition = l2stokes::lst_failure_condition(params);
    auto chart = l2stokes::sample_chart_points(params, samples, r_min, r_max, seed);
    auto distortion = l2stokes::pullback_metric_check(params, chart);

    json inputs;
    inputs["n"] = n;
    inputs["m"] = m;
    inputs["p"] = p;
    inputs["q"] = q;
    inputs["samples"] = samples;
    inputs["seed"] = seed;
    inputs["r_min"] = r_min;
    inputs["r_max"] = r_max;

    json result;
    result["singular_set_V"] = l2stokes::to_json(sing_v);
    result["singular_set_W"] = l2stokes::to_json(sing_w);
    result["model"] = l2stokes::to_json(model);
    result["failure_condition"] = {{"holds", condition.fails},
                                   {"degrees", condition.degrees}};
    result["distortion"] = l2stokes::to_json(distortion);
    json doc = l2stokes::make_report("variety", inputs, json::array({result}),
                                     l2stokes::citations_for({"warped-critical-degree"}),
                                     timer.elapsed_ms());
    emit_report(doc, out);
    return 0;
}

json error_object(const std::string& type, const std::string& message) {
    return json{{"error", {{"type", type}, {"message", message}}}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"L2-Stokes analysis toolbox: uniqueness criteria, boundary-pairing defects "
                 "and cone spectra for warped-product singularity models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("l2st ") + l2stokes::version);

    // raw tokens (skip program name); needed for config-file merging
    std::vector<std::string> tokens(argv + 1, argv + argc);

    OutputOpts out;
    std::string config_path;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] == "--config" && i + 1 < tokens.size()) config_path = tokens[i + 1];
        if (tokens[i].rfind("--config=", 0) == 0) config_path = tokens[i].substr(9);
    }

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--output,-o", out.output, "write the report to a file");
        cmd->add_option("--format", out.format, "json or table (table: spectrum only)")
            ->check(CLI::IsMember({"json", "table"}));
        cmd->add_option("--config", config_path,
                        "flat key = value config file; explicit flags override it");
    };

    // cone
    auto* cone = app.add_subcommand("cone", "Cheeger criterion for the cone over a link");
    SectionOpts cone_section;
    add_section_options(cone, cone_section, "", "the link");
    add_common(cone);

    // two-factor
    auto* twof = app.add_subcommand("two-factor",
                                    "boundary-pairing failure degrees of a two-factor model");
    SectionOpts tf1, tf2;
    std::string tf_alpha1 = "1", tf_alpha2 = "1";
    add_section_options(twof, tf1, "1", "factor 1");
    add_section_options(twof, tf2, "2", "factor 2");
    twof->add_option("--alpha1", tf_alpha1, "warping exponent of factor 1 (rational, e.g. 3/2)");
    twof->add_option("--alpha2", tf_alpha2, "warping exponent of factor 2 (rational, e.g. 3/2)");
    add_common(twof);

    // complex
    auto* cplx = app.add_subcommand("complex",
                                    "degree bookkeeping for a complex projective variety");
    int cplx_dim = 0;
    cplx->add_option("--dim", cplx_dim, "complex dimension n")->required();
    add_common(cplx);

    // defect
    auto* dft = app.add_subcommand("defect",
                                   "numerical integration-by-parts defect on a two-factor model");
    SectionOpts df1, df2;
    df1.sphere_dim = 1; // torus-cone defaults: (S^1,1) x (S^1,1), k = 1
    df2.sphere_dim = 1;
    std::string df_alpha1 = "1", df_alpha2 = "1";
    long df_k = 1;
    int df_target = 2;
    double df_norm_sq = 2.0 * M_PI;
    double df_pa = 0.25, df_pb = 0.5, df_psia = 0.25, df_psi0 = 1.0, df_tol = 1e-8;
    add_section_options(dft, df1, "1", "factor 1");
    add_section_options(dft, df2, "2", "factor 2");
    dft->add_option("--alpha1", df_alpha1, "warping exponent of factor 1");
    dft->add_option("--alpha2", df_alpha2, "warping exponent of factor 2");
    dft->add_option("--k", df_k, "form degree (default 1)");
    dft->add_option("--target", df_target, "factor carrying the harmonic form (default 2)");
    dft->add_option("--norm-sq", df_norm_sq,
                    "squared L2 norm of the harmonic form (default 2*pi: d-theta on the circle)");
    dft->add_option("--plateau-a", df_pa, "phi is 1 on [0, a]");
    dft->add_option("--plateau-b", df_pb, "phi vanishes past b");
    dft->add_option("--psi-a", df_psia, "psi is supported in [0, a]");
    dft->add_option("--psi0", df_psi0, "psi(0)");
    dft->add_option("--tol", df_tol, "defect tolerance");
    add_common(dft);

    // spectrum
    auto* spec = app.add_subcommand("spectrum",
                                    "Friedrichs scalar spectrum of a truncated cone");
    SectionOpts sp_section;
    double sp_radius = 1.0;
    int sp_count = 5;
    add_section_options(spec, sp_section, "", "the link");
    spec->add_option("--cone-radius", sp_radius, "outer radius R (default 1)");
    spec->add_option("--count", sp_count, "eigenvalues to report, counted with multiplicity");
    add_common(spec);

    // variety
    auto* var = app.add_subcommand("variety", "counterexample variety family analysis");
    int v_n = 0, v_m = 0, v_p = 0, v_q = 0;
    long v_samples = 1000;
    unsigned v_seed = 7;
    double v_rmin = 1e-3, v_rmax = 0.5;
    var->add_option("--n", v_n, "x block dimension")->required();
    var->add_option("--m", v_m, "y block dimension")->required();
    var->add_option("--p", v_p, "x exponent")->required();
    var->add_option("--q", v_q, "y exponent")->required();
    var->add_option("--samples", v_samples, "audit sample count (default 1000)");
    var->add_option("--seed", v_seed, "sampling seed (default 7)");
    var->add_option("--r-min", v_rmin, "smallest sampled radius");
    var->add_option("--r-max", v_rmax, "largest sampled radius");
    add_common(var);

    // merge config-file tokens (only keys not already present) and parse
    try {
        if (!config_path.empty()) {
            auto extra = read_config_tokens(config_path, tokens);
            // subcommand name stays first, config tokens follow it
            if (tokens.empty())
                throw l2stokes::parameter_error("config file given without a verb");
            std::vector<std::string> merged;
            merged.push_back(tokens.front());
            merged.insert(merged.end(), extra.begin(), extra.end());
            merged.insert(merged.end(), tokens.begin() + 1, tokens.end());
            tokens = std::move(merged);
        }
        std::vector<const char*> cargv;
        cargv.push_back(argv[0]);
        for (const std::string& t : tokens) cargv.push_back(t.c_str());
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << error_object("validation", e.what()).dump(2) << "\n";
        return 2;
    } catch (const l2stokes::validation_error& e) {
        std::cout << error_object("validation", e.what()).dump(2) << "\n";
        return 2;
    }

    try {
        if (out.format == "table" && !spec->parsed())
            throw l2stokes::parameter_error("--format table is only available for spectrum");
        if (cone->parsed()) return run_cone(cone_section, out);
        if (twof->parsed()) return run_two_factor(tf1, tf_alpha1, tf2, tf_alpha2, out);
        if (cplx->parsed()) return run_complex(cplx_dim, out);
        if (dft->parsed())
            return run_defect(df1, df_alpha1, df2, df_alpha2, df_k, df_target, df_norm_sq, df_pa,
                              df_pb, df_psia, df_psi0, df_tol, out);
        if (spec->parsed()) return run_spectrum(sp_section, sp_radius, sp_count, out);
        if (var->parsed())
            return run_variety(v_n, v_m, v_p, v_q, v_samples, v_seed, v_rmin, v_rmax, out);
        std::cout << error_object("validation", "no verb given").dump(2) << "\n";
        return 2;
    } catch (const l2stokes::validation_error& e) {
        std::cout << error_object("validation", e.what()).dump(2) << "\n";
        return 2;
    } catch (const l2stokes::numeric_error& e) {
        std::cout << error_object("numeric", e.what()).dump(2) << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cout << error_object("internal", e.what()).dump(2) << "\n";
        return 3;
    }
}
