#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pricelab/spaceform.hpp"

using namespace pricelab;

TEST_CASE("mean curvature closed forms") {
    CHECK(mean_curvature(SpaceForm(3, 0.0), 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(mean_curvature(SpaceForm(2, -1.0), 1.0) ==
          doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-12));
    // coth asymptote: H -> (n-1) sqrt|k| as r -> infinity
    CHECK(mean_curvature(SpaceForm(3, -1.0), 50.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(mean_curvature(SpaceForm(3, -1.0), 0.0), DomainError);
    CHECK_THROWS_AS(mean_curvature(SpaceForm(3, -1.0), -1.0), DomainError);
}

TEST_CASE("sphere areas") {
    CHECK(sphere_area(SpaceForm(3, 0.0), 2.0) == doctest::Approx(16 * M_PI).epsilon(1e-14));
    CHECK(sphere_area(SpaceForm(2, -1.0), 1.0) ==
          doctest::Approx(2 * M_PI * std::sinh(1.0)).epsilon(1e-14));
    const double s2 = std::sinh(2.0) / 2.0;
    CHECK(sphere_area(SpaceForm(3, -4.0), 1.0) == doctest::Approx(4 * M_PI * s2 * s2).epsilon(1e-14));
    CHECK(sphere_area(SpaceForm(4, -1.0), 0.0) == 0.0);
}

TEST_CASE("log-derivative of sphere area equals mean curvature") {
    // d/dR log area = H_k(R), centered differences on the closed form
    const double h = 1e-5;
    for (const SpaceForm space : {SpaceForm(2, -1.0), SpaceForm(3, -2.5), SpaceForm(5, 0.0)}) {
        for (double R : {0.5, 1.0, 2.0, 4.0}) {
            const double fd =
                (std::log(sphere_area(space, R + h)) - std::log(sphere_area(space, R - h))) /
                (2 * h);
            CHECK(fd == doctest::Approx(mean_curvature(space, R)).epsilon(1e-6));
        }
    }
}

TEST_CASE("mean curvature monotone decreasing and Rauch-ordered") {
    const SpaceForm k_space(3, -1.0), kprime_space(3, -4.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double r = 0.25; r <= 6.0; r += 0.25) {
        const double h = mean_curvature(k_space, r);
        CHECK(h > 0.0);
        CHECK(h < prev);
        // k' <= k: stronger curvature means larger mean curvature pointwise
        CHECK(mean_curvature(kprime_space, r) >= h);
        prev = h;
    }
}

TEST_CASE("ball volume integrates sphere area") {
    for (const SpaceForm space : {SpaceForm(2, -1.0), SpaceForm(3, -1.0), SpaceForm(4, -2.0),
                                  SpaceForm(3, 0.0)}) {
        for (double R : {0.5, 1.5, 3.0}) {
            // midpoint rule on a fine mesh as the cross-check
            const int steps = 20000;
            double acc = 0.0;
            for (int i = 0; i < steps; ++i)
                acc += sphere_area(space, (i + 0.5) * R / steps) * (R / steps);
            CHECK(ball_volume(space, R) == doctest::Approx(acc).epsilon(1e-7));
        }
    }
    CHECK(ball_volume(SpaceForm(3, 0.0), 1.0) == doctest::Approx(4 * M_PI / 3).epsilon(1e-14));
    // H^3: vol = pi (sinh 2R - 2R)
    CHECK(ball_volume(SpaceForm(3, -1.0), 2.0) ==
          doctest::Approx(M_PI * (std::sinh(4.0) - 4.0)).epsilon(1e-13));
}

TEST_CASE("ball-model radius dictionary") {
    const SpaceForm h2(2, -1.0);
    CHECK(geodesic_to_ball_radius(h2, 0.0) == 0.0);
    CHECK(geodesic_to_ball_radius(h2, 2.0) == doctest::Approx(std::tanh(1.0)).epsilon(1e-14));
    CHECK(geodesic_to_ball_radius(h2, 60.0) == doctest::Approx(1.0).epsilon(1e-12));
    // strictly increasing bijection onto [0, 1); round trips to 1e-12
    double prev = -1.0;
    for (double R = 0.0; R <= 8.0; R += 0.37) {
        const double rho = geodesic_to_ball_radius(h2, R);
        CHECK(rho > prev);
        CHECK(rho < 1.0);
        CHECK(ball_to_geodesic_radius(h2, rho) == doctest::Approx(R).epsilon(1e-12));
        prev = rho;
    }
    const SpaceForm h3k4(3, -4.0);
    CHECK(geodesic_to_ball_radius(h3k4, 1.0) == doctest::Approx(std::tanh(1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(geodesic_to_ball_radius(SpaceForm(3, 0.0), 1.0), UnsupportedSpaceError);
}

TEST_CASE("space form validation") {
    CHECK_THROWS_AS(SpaceForm(1, -1.0), DomainError);
    CHECK_THROWS_AS(SpaceForm(3, 0.5), DomainError);
    CHECK(unit_sphere_area(3) == doctest::Approx(4 * M_PI).epsilon(1e-14));
    CHECK(unit_sphere_area(2) == doctest::Approx(2 * M_PI).epsilon(1e-14));
    CHECK(unit_sphere_area(4) == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-14));
}
