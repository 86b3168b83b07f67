#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "l2stokes/cone_spectrum.hpp"
#include "oracles.hpp"

using namespace l2stokes;

TEST_CASE("ode index") {
    CHECK(ode_index(0.0, 1) == 0.0);
    CHECK(ode_index(0.0, 3) == 1.0);
    CHECK(ode_index(2.0, 2) == Catch::Approx(1.5).epsilon(1e-15)); // sqrt(2 + 1/4)
    CHECK(ode_index(0.0, 2) == 0.5);
    CHECK_THROWS_AS(ode_index(-1.0, 2), parameter_error);
    CHECK_THROWS_AS(ode_index(1.0, 0), parameter_error);
}

TEST_CASE("endpoint classification") {
    CHECK(classify_endpoint(0.0) == EndpointClass::LimitCircle);
    CHECK(classify_endpoint(0.5) == EndpointClass::LimitCircle);
    CHECK(classify_endpoint(1.0) == EndpointClass::LimitPoint);
    CHECK(classify_endpoint(2.5) == EndpointClass::LimitPoint);
    CHECK_THROWS_AS(classify_endpoint(-0.1), parameter_error);
}

TEST_CASE("friedrichs spectrum: exact sine branch") {
    auto lams = friedrichs_spectrum(SingularRadialProblem(0.5, 1.0), 3);
    REQUIRE(lams.size() == 3);
    CHECK(lams[0] == Catch::Approx(M_PI * M_PI).epsilon(1e-10));
    CHECK(lams[1] == Catch::Approx(4.0 * M_PI * M_PI).epsilon(1e-10));
    CHECK(lams[2] == Catch::Approx(9.0 * M_PI * M_PI).epsilon(1e-10));
}

TEST_CASE("friedrichs spectrum: nu = 0 against frozen values and the FD oracle") {
    auto lams = friedrichs_spectrum(SingularRadialProblem(0.0, 1.0), 2);
    CHECK(lams[0] == Catch::Approx(5.783185962946785).epsilon(1e-10));
    CHECK(lams[1] == Catch::Approx(30.471262343662087).epsilon(1e-10));

    auto fd = oracle::fd_radial_eigenvalues(0.0, 1.0, 10000, 2);
    CHECK(std::abs(fd[0] - lams[0]) / lams[0] <= 1e-3);
    CHECK(std::abs(fd[1] - lams[1]) / lams[1] <= 1e-3);

    // halved radius quadruples the spectrum
    auto half = friedrichs_spectrum(SingularRadialProblem(0.0, 2.0), 1);
    CHECK(half[0] == Catch::Approx(lams[0] / 4.0).epsilon(1e-12));
}

TEST_CASE("finite-difference oracle agreement across nu") {
    for (double nu : {0.0, 0.3, 0.5, 1.0, 1.7, 2.0, 3.25}) {
        auto exact = friedrichs_spectrum(SingularRadialProblem(nu, 1.0), 2);
        auto fd = oracle::fd_radial_eigenvalues(nu, 1.0, 10000, 2);
        for (int i = 0; i < 2; ++i)
            CHECK(std::abs(fd[i] - exact[i]) / exact[i] <= 1e-3);
        double extrapolated = oracle::fd_radial_eigenvalue_richardson(nu, 1.0, 10000, 0);
        CHECK(std::abs(extrapolated - exact[0]) / exact[0] <= 1e-5);
    }
}

TEST_CASE("friedrichs spectrum properties") {
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> nu_dist(0.0, 6.0);
    std::uniform_real_distribution<double> r_dist(0.2, 5.0);

    SECTION("scaling law in R") {
        for (int trial = 0; trial < 100; ++trial) {
            double nu = nu_dist(rng), R = r_dist(rng);
            auto unit = friedrichs_spectrum(SingularRadialProblem(nu, 1.0), 3);
            auto scaled = friedrichs_spectrum(SingularRadialProblem(nu, R), 3);
            for (int i = 0; i < 3; ++i)
                CHECK(scaled[i] == Catch::Approx(unit[i] / (R * R)).epsilon(1e-12));
        }
    }

    SECTION("strict monotonicity in nu") {
        for (int trial = 0; trial < 100; ++trial) {
            double nu = nu_dist(rng);
            double gap = 0.05 + nu_dist(rng) / 6.0;
            auto low = friedrichs_spectrum(SingularRadialProblem(nu, 1.0), 3);
            auto high = friedrichs_spectrum(SingularRadialProblem(nu + gap, 1.0), 3);
            for (int i = 0; i < 3; ++i) CHECK(low[i] < high[i]);
        }
    }

    SECTION("strictly increasing within a branch") {
        auto lams = friedrichs_spectrum(SingularRadialProblem(1.3, 0.7), 6);
        for (int i = 1; i < 6; ++i) CHECK(lams[i - 1] < lams[i]);
    }

    CHECK_THROWS_AS(friedrichs_spectrum(SingularRadialProblem(0.0, 1.0), 0), parameter_error);
    CHECK_THROWS_AS(SingularRadialProblem(-1.0, 1.0), parameter_error);
    CHECK_THROWS_AS(SingularRadialProblem(1.0, 0.0), parameter_error);
}

TEST_CASE("cross-section spectra") {
    SECTION("sphere multiplicities match the harmonic polynomial count") {
        auto s2 = CrossSection::sphere(2);
        auto modes = cross_section_spectrum(s2, 30.0);
        REQUIRE(modes.size() >= 5);
        for (std::size_t l = 0; l < 5; ++l) {
            CHECK(modes[l].mu == Catch::Approx(static_cast<double>(l * (l + 1))).margin(1e-12));
            CHECK(modes[l].multiplicity ==
                  oracle::spherical_harmonic_dimension(2, static_cast<int>(l)));
        }
        CHECK(modes[1].mu == 2.0);
        CHECK(modes[1].multiplicity == 3);

        // S^3 multiplicities: (l+1)^2
        auto s3_modes = cross_section_spectrum(CrossSection::sphere(3), 20.0);
        for (std::size_t l = 0; l < 4; ++l) {
            CHECK(s3_modes[l].multiplicity ==
                  oracle::spherical_harmonic_dimension(3, static_cast<int>(l)));
            CHECK(s3_modes[l].multiplicity == static_cast<long>((l + 1) * (l + 1)));
        }

        // radius rescales eigenvalues, not multiplicities
        auto scaled = cross_section_spectrum(CrossSection::sphere(2, 2.0), 10.0);
        CHECK(scaled[1].mu == Catch::Approx(0.5).margin(1e-12));
        CHECK(scaled[1].multiplicity == 3);
    }

    SECTION("circle modes") {
        auto circle = cross_section_spectrum(CrossSection::sphere(1), 10.0);
        REQUIRE(circle.size() == 4); // mu = 0, 1, 4, 9
        CHECK(circle[0].multiplicity == 1);
        for (std::size_t m = 1; m < 4; ++m) {
            CHECK(circle[m].mu == Catch::Approx(static_cast<double>(m * m)).margin(1e-12));
            CHECK(circle[m].multiplicity == 2);
        }
    }

    SECTION("square torus lattice multiplicities") {
        auto torus = cross_section_spectrum(CrossSection::torus({2.0 * M_PI, 2.0 * M_PI}), 5.5);
        // mu = 0 (x1), 1 (x4), 2 (x4), 4 (x4), 5 (x8)
        REQUIRE(torus.size() == 5);
        CHECK(torus[0].mu == 0.0);
        CHECK(torus[0].multiplicity == 1);
        CHECK(torus[1].mu == Catch::Approx(1.0).margin(1e-12));
        CHECK(torus[1].multiplicity == 4);
        CHECK(torus[2].mu == Catch::Approx(2.0).margin(1e-12));
        CHECK(torus[2].multiplicity == 4);
        CHECK(torus[3].mu == Catch::Approx(4.0).margin(1e-12));
        CHECK(torus[3].multiplicity == 4);
        CHECK(torus[4].mu == Catch::Approx(5.0).margin(1e-12));
        CHECK(torus[4].multiplicity == 8);
    }

    SECTION("explicit passthrough") {
        auto section = CrossSection::with_explicit_spectrum(
            "probe", 1, {1, 1}, 1.0, {{4.0, 2}, {0.0, 1}, {9.0, 2}});
        auto modes = cross_section_spectrum(section, 5.0);
        REQUIRE(modes.size() == 2);
        CHECK(modes[0].mu == 0.0);
        CHECK(modes[1].mu == 4.0);
    }
}

TEST_CASE("scalar cone spectrum: the flat disk") {
    // cone over the circle of circumference 2 pi = the unit disk; Dirichlet
    // eigenvalues are squared Bessel zeros
    auto table = scalar_cone_spectrum(CrossSection::sphere(1), 1.0, 5);
    REQUIRE(table.entries.size() == 3);
    CHECK(table.entries[0].eigenvalue == Catch::Approx(5.783185962946785).epsilon(1e-10));
    CHECK(table.entries[0].multiplicity == 1);
    CHECK(table.entries[1].eigenvalue == Catch::Approx(14.681970642124488).epsilon(1e-10));
    CHECK(table.entries[1].multiplicity == 2);
    CHECK(table.entries[2].eigenvalue == Catch::Approx(26.374616427163247).epsilon(1e-10));
    CHECK(table.entries[2].multiplicity == 2);
    CHECK(table.total_multiplicity() == 5);
    CHECK(table.entries[0].mu == 0.0);
    CHECK(table.entries[0].branch == 1);

    // the finite-difference oracle confirms each branch value
    const double nus[] = {0.0, 1.0, 2.0};
    for (int b = 0; b < 3; ++b) {
        auto fd = oracle::fd_radial_eigenvalues(nus[b], 1.0, 10000, 1);
        CHECK(std::abs(fd[0] - table.entries[b].eigenvalue) / table.entries[b].eigenvalue <=
              1e-3);
    }
}

TEST_CASE("scalar cone spectrum: the flat ball and explicit consistency") {
    // cone over the unit S^2 = the unit ball; lowest Dirichlet eigenvalue pi^2
    auto ball = scalar_cone_spectrum(CrossSection::sphere(2), 1.0, 1);
    REQUIRE(!ball.entries.empty());
    CHECK(ball.entries[0].eigenvalue == Catch::Approx(M_PI * M_PI).epsilon(1e-10));
    CHECK(ball.entries[0].multiplicity == 1);

    // single explicit mode reduces to one radial branch
    auto section = CrossSection::with_explicit_spectrum("probe", 3, {1, 0, 0, 1}, 1.0, {{0.0, 1}});
    auto table = scalar_cone_spectrum(section, 1.0, 3);
    auto branch = friedrichs_spectrum(SingularRadialProblem(ode_index(0.0, 3), 1.0), 3);
    REQUIRE(table.entries.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(table.entries[i].eigenvalue == Catch::Approx(branch[i]).epsilon(1e-12));
        CHECK(table.entries[i].branch == i + 1);
    }

    auto empty = CrossSection::with_explicit_spectrum("empty", 1, {1, 1}, 1.0, {});
    CHECK_THROWS_AS(scalar_cone_spectrum(empty, 1.0, 2), mode_budget_error);
}

TEST_CASE("scalar cone spectrum: torus link and table invariants") {
    auto table = scalar_cone_spectrum(CrossSection::torus({2.0 * M_PI, 2.0 * M_PI}), 1.0, 8);
    table.validate();
    CHECK(table.total_multiplicity() >= 8);
    for (std::size_t i = 1; i < table.entries.size(); ++i)
        CHECK(table.entries[i - 1].eigenvalue < table.entries[i].eigenvalue);

    // scaling law carries over to the assembled table
    auto scaled = scalar_cone_spectrum(CrossSection::torus({2.0 * M_PI, 2.0 * M_PI}), 2.0, 8);
    REQUIRE(scaled.entries.size() == table.entries.size());
    for (std::size_t i = 0; i < table.entries.size(); ++i)
        CHECK(scaled.entries[i].eigenvalue ==
              Catch::Approx(table.entries[i].eigenvalue / 4.0).epsilon(1e-11));
}
