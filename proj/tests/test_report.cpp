#include <catch2/catch_amalgamated.hpp>

#include "l2stokes/report.hpp"

using namespace l2stokes;

TEST_CASE("significant-digit rounding") {
    CHECK(round_sig(0.0) == 0.0);
    CHECK(round_sig(1.0) == 1.0);
    CHECK(round_sig(M_PI, 4) == 3.142);
    CHECK(round_sig(39.478417604357434) == 39.4784176044);
    CHECK(round_sig(-1.23456789012345e-7, 6) == -1.23457e-7);
}

TEST_CASE("report documents are byte-stable modulo timing") {
    auto build = [] {
        auto report = complex_variety_report(3);
        json inputs;
        inputs["dim"] = 3;
        return make_report("complex", inputs, json::array({to_json(report)}),
                           citations_for(rules_used(report)), 0.0);
    };
    json a = build();
    json b = build();
    a.erase("elapsed_ms");
    b.erase("elapsed_ms");
    CHECK(a.dump(2) == b.dump(2));
}

TEST_CASE("verdict serialization carries degree, status and rule") {
    auto report = complex_variety_report(2);
    json j = to_json(report);
    REQUIRE(j.contains("verdicts"));
    REQUIRE(j["verdicts"].size() == 5);
    CHECK(j["verdicts"][0]["degree"] == 0);
    CHECK(j["verdicts"][0]["status"] == "UNIQUE");
    CHECK(j["verdicts"][1]["status"] == "UNKNOWN");
    CHECK(j["verdicts"][1]["rule"] == "middle-degree-open");
    CHECK(j.contains("hodge_degrees"));
    CHECK(j["hodge_degrees"] == json::array({0, 4}));
    CHECK(j.contains("dolbeault_unique_bidegrees"));
}

TEST_CASE("citations resolve against the registry") {
    json c = citations_for({"cheeger-cone", "warped-critical-degree"});
    REQUIRE(c.size() == 2);
    CHECK(c[0]["rule"] == "cheeger-cone");
    CHECK(c[0]["statement"].get<std::string>().find("cone criterion") != std::string::npos);
    CHECK_THROWS_AS(citations_for({"bogus"}), parameter_error);
}

TEST_CASE("defect serialization exposes the contracted fields") {
    WarpedModel model({CrossSection::sphere(1), Rational(1)},
                      {CrossSection::sphere(1), Rational(1)});
    auto result = defect(model, CutoffPair::standard(), HarmonicFormSpec{2, 1, 2.0 * M_PI}, 1e-8);
    json j = to_json(result);
    for (const char* key : {"beta", "defect", "closed_form", "normalized_closed_form",
                            "abs_error", "pairing_d", "pairing_dt", "volume_factor"})
        CHECK(j.contains(key));
    CHECK(j["beta"] == "0");
}

TEST_CASE("spectrum serialization") {
    auto table = scalar_cone_spectrum(CrossSection::sphere(1), 1.0, 3);
    json j = to_json(table);
    REQUIRE(j.contains("entries"));
    CHECK(j["entries"].size() == 2); // 5.78 (x1) + 14.68 (x2)
    for (const char* key : {"eigenvalue", "multiplicity", "mu", "branch"})
        CHECK(j["entries"][0].contains(key));
    CHECK(j["total_multiplicity"] == 3);
}

TEST_CASE("model serialization carries exact exponents") {
    WarpedModel model({CrossSection::sphere(3), Rational(1)},
                      {CrossSection::sphere(2), Rational(3, 2)});
    json j = to_json(model);
    CHECK(j["factors"][1]["alpha"] == "3/2");
    CHECK(j["total_dim"] == 6);
    CHECK(j["factors"][0]["section"]["name"] == "S^3");
}
