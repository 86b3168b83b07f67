#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "l2stokes/variety_lab.hpp"

using namespace l2stokes;

TEST_CASE("variety parameter invariants") {
    CHECK_NOTHROW(VarietyParams(4, 3, 3, 2));
    CHECK_THROWS_AS(VarietyParams(4, 3, 2, 2), parameter_error); // p = q
    CHECK_THROWS_AS(VarietyParams(4, 3, 1, 2), parameter_error); // p < q
    CHECK_THROWS_AS(VarietyParams(4, 3, 2, 0), parameter_error); // q = 0
    CHECK_THROWS_AS(VarietyParams(0, 3, 3, 2), parameter_error);
}

TEST_CASE("singular sets of V and W") {
    VarietyParams params(4, 3, 3, 2);

    auto v = variety_singular_set(params, VarietyKind::V, 1000, 7);
    CHECK(v.isolated_point);
    CHECK(v.has_stratum);
    CHECK(v.stratum_dim == 2); // RP^2
    CHECK(v.audit.passed);
    CHECK(v.audit.smooth_samples >= 1000);
    CHECK(v.audit.max_gradient_norm_singular == 0.0);
    CHECK(v.audit.min_gradient_norm_smooth > 1e-8);

    auto w = variety_singular_set(params, VarietyKind::W, 1000, 7);
    CHECK(w.isolated_point);
    CHECK_FALSE(w.has_stratum);
    CHECK(w.audit.passed);

    // q = 1 exercises the linear gradient branch
    auto low = variety_singular_set(VarietyParams(3, 2, 2, 1), VarietyKind::V, 500, 11);
    CHECK(low.audit.passed);
}

TEST_CASE("quasi-isometry model") {
    auto model = quasi_isometry_model(VarietyParams(4, 3, 3, 2));
    CHECK(model.num_factors() == 2);
    CHECK(model.factor(1).section.dim() == 3);
    CHECK(model.factor(1).exponent == Rational(1));
    CHECK(model.factor(2).section.dim() == 2);
    CHECK(model.factor(2).exponent == Rational(3, 2));

    auto small = quasi_isometry_model(VarietyParams(2, 2, 2, 1));
    CHECK(small.factor(1).section.dim() == 1);
    CHECK(small.factor(2).section.dim() == 1);
    CHECK(small.factor(2).exponent == Rational(2));
}

TEST_CASE("failure condition") {
    auto hit = lst_failure_condition(VarietyParams(4, 3, 3, 2));
    CHECK(hit.fails);
    CHECK(hit.degrees == std::set<long>{2, 3});

    auto family = lst_failure_condition(VarietyParams(6, 5, 5, 4));
    CHECK(family.fails);
    CHECK(family.degrees == std::set<long>{4, 5});

    auto miss = lst_failure_condition(VarietyParams(4, 3, 2, 1));
    CHECK_FALSE(miss.fails);
    CHECK(miss.degrees.empty());
}

TEST_CASE("even-dimensional witness family") {
    // (m, n, p, q) = (2k+1, 2k+2, 2k+1, 2k): the condition holds for every k
    // and the variety dimension n + m - 1 is even
    for (int k = 1; k <= 25; ++k) {
        VarietyParams params(2 * k + 2, 2 * k + 1, 2 * k + 1, 2 * k);
        auto condition = lst_failure_condition(params);
        CHECK(condition.fails);
        const long dim_v = params.n + params.m - 1;
        CHECK(dim_v % 2 == 0);
        CHECK(condition.degrees == std::set<long>{params.n - 1, params.m - 1});
        // the failing pair is dual: (n-1) + (m-1) = dim V - 1
        CHECK(params.n - 1 + params.m - 1 == dim_v - 1);
    }
}

TEST_CASE("vanishing-order normal form") {
    auto model = vfg_normal_form(3, 2, 4, 3);
    CHECK(model.factor(2).exponent == Rational(3, 2));
    CHECK(model.factor(1).section.dim() == 3);
    CHECK(model.factor(2).section.dim() == 2);

    auto smooth = vfg_normal_form(1, 1, 4, 3);
    CHECK(smooth.factor(1).exponent == Rational(1));
    CHECK(smooth.factor(2).exponent == Rational(1));

    auto steep = vfg_normal_form(2, 1, 2, 2);
    CHECK(steep.factor(1).section.dim() == 1);
    CHECK(steep.factor(2).section.dim() == 1);
    CHECK(steep.factor(2).exponent == Rational(2));

    CHECK_THROWS_AS(vfg_normal_form(1, 2, 4, 3), parameter_error);
    CHECK_THROWS_AS(vfg_normal_form(2, 0, 4, 3), parameter_error);
}

TEST_CASE("pullback distortion: alpha = 1 is exactly sqrt(2)-quasi-isometric") {
    auto samples = sample_chart_points(2, 2, 50, 0.01, 0.9, 21);
    auto report = pullback_metric_check(1.0, 2, 2, samples);
    CHECK(report.max_radial_ratio == Catch::Approx(2.0).margin(1e-8));
    CHECK(report.max_ratio == Catch::Approx(2.0).margin(1e-6));
    CHECK(report.min_ratio == Catch::Approx(1.0).margin(1e-6));
    CHECK(report.bound == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("pullback distortion: the (4,3,3,2) family obeys the closed-form bound") {
    VarietyParams params(4, 3, 3, 2);
    auto samples = sample_chart_points(params, 300, 1e-3, 0.5, 5);
    auto report = pullback_metric_check(params, samples);
    const double alpha = 1.5;
    const double bound = 1.0 + alpha * alpha * std::pow(0.5, 2.0 * (alpha - 1.0)); // 2.125
    CHECK(report.bound <= bound + 1e-12);
    CHECK(report.max_ratio <= bound * (1.0 + 1e-4));
    CHECK(report.max_ratio >= 1.0);
    CHECK(report.min_ratio >= 1.0 - 1e-4);
}

TEST_CASE("pullback distortion: shrinking r_max shrinks the distortion") {
    VarietyParams params(2, 2, 2, 1); // alpha = 2
    auto wide = pullback_metric_check(params, sample_chart_points(params, 200, 1e-3, 0.5, 9));
    auto narrow = pullback_metric_check(params, sample_chart_points(params, 200, 1e-3, 0.05, 9));
    auto tiny = pullback_metric_check(params, sample_chart_points(params, 200, 0.009, 0.01, 9));
    CHECK(narrow.max_ratio <= wide.max_ratio + 1e-12);
    CHECK(tiny.max_ratio <= narrow.max_ratio + 1e-12);
    // alpha = 2 at r <= 0.01: distortion within 1e-3 of an isometry
    CHECK(tiny.max_ratio - 1.0 <= 1e-3);
    CHECK(tiny.max_ratio - 1.0 >= 0.0);
}

TEST_CASE("pullback distortion guards") {
    VarietyParams params(3, 3, 2, 1);
    CHECK_THROWS_AS(pullback_metric_check(params, {}), parameter_error);

    ChartSample degenerate;
    degenerate.r = 1e-5;
    degenerate.v = {1.0, 0.0, 0.0};
    degenerate.w = {0.0, 1.0, 0.0};
    CHECK_THROWS_AS(pullback_metric_check(params, {degenerate}), numeric_error);

    ChartSample mismatched;
    mismatched.r = 0.2;
    mismatched.v = {1.0};
    mismatched.w = {0.0, 1.0, 0.0};
    CHECK_THROWS_AS(pullback_metric_check(params, {mismatched}), parameter_error);

    CHECK_THROWS_AS(sample_chart_points(params, 10, 0.5, 0.1, 1), parameter_error);
    CHECK_THROWS_AS(sample_chart_points(params, 0, 0.1, 0.5, 1), parameter_error);
}
