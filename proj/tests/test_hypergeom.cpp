#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pricelab/harmonics.hpp"
#include "pricelab/hypergeom.hpp"
#include "support/oracles.hpp"

using namespace pricelab;

namespace {
const QuadratureSpec kSpec;
}

TEST_CASE("terminating 2F1: hand-expanded values") {
    // (a=-2, b=1, c=-2, z) -> 1 + z + z^2
    for (double z : {0.3, 1.0, 7.389056098930650}) {
        CHECK(hyp2f1_terminating(-2, 1.0, -2.0, z) ==
              doctest::Approx(1.0 + z + z * z).epsilon(1e-14));
    }
    CHECK(hyp2f1_terminating(0, 3.7, -0.5, 123.0) == 1.0);
    CHECK(hyp2f1_terminating(1 - 3, (3 - 1) / 2.0, (5 - 9) / 2.0, 0.0) == 1.0);
    // n = 4 family: 1 + (9/7) z + (9/7) z^2 + z^3
    const double z = 2.0;
    CHECK(hyp2f1_terminating(-3, 1.5, -3.5, z) ==
          doctest::Approx(1.0 + 9.0 / 7.0 * z + 9.0 / 7.0 * z * z + z * z * z).epsilon(1e-14));
    CHECK_THROWS_AS(hyp2f1_terminating(1, 1.0, 1.0, 0.5), DomainError);
    // c hits zero before a truncates
    CHECK_THROWS_AS(hyp2f1_terminating(-4, 1.0, -2.0, 0.5), ParameterConflictError);
}

TEST_CASE("q closed form: exact values for n = 3") {
    // c1 = 4 pi / 3 under P(0) = 1; Q(R) = (pi/3)(e^{4R} + e^{-4R} - e^{2R} - e^{-2R})
    const double c1 = 4 * M_PI / 3;
    for (double R : {0.25, 1.0, 2.0, 5.0}) {
        CHECK(q_closed_form(3, R, c1) ==
              doctest::Approx(oracles::SingleAtomH3::Q(R)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(q_closed_form(2, 1.0, 1.0), UnsupportedSpaceError);
}

TEST_CASE("calibration constants pin down the kernel normalization") {
    CHECK(calibrate_c1(3, kSpec) == doctest::Approx(4 * M_PI / 3).epsilon(1e-9));
    CHECK(calibrate_c1(4, kSpec) == doctest::Approx(7 * M_PI * M_PI / 16).epsilon(1e-9));
}

TEST_CASE("q coefficients: frozen exact vectors for n = 3 and n = 4") {
    const QFormEvaluation q3 = q_coefficients(3, 4 * M_PI / 3);
    REQUIRE(q3.alpha.size() == 5);
    const double u = M_PI / 3;
    const std::vector<double> want3{u, -u, 0.0, -u, u};
    for (int i = 0; i < 5; ++i)
        CHECK(q3.alpha[i] == doctest::Approx(want3[i]).epsilon(1e-14).scale(1e-14));

    const QFormEvaluation q4 = q_coefficients(4, 7 * M_PI * M_PI / 16);
    REQUIRE(q4.alpha.size() == 7);
    const double v = M_PI * M_PI / 128;
    const std::vector<double> want4{-7 * v, 12 * v, -3 * v, 0.0, 3 * v, -12 * v, 7 * v};
    for (int i = 0; i < 7; ++i)
        CHECK(q4.alpha[i] == doctest::Approx(want4[i]).epsilon(1e-14).scale(1e-14));

    // leading coefficient positive: growth e^{2(n-1)R}
    CHECK(q3.alpha.back() > 0.0);
    CHECK(q4.alpha.back() > 0.0);
}

TEST_CASE("coefficient form identical to the 2F1 form") {
    for (int n : {3, 4, 5, 6}) {
        const QFormEvaluation q = q_coefficients(n, 1.0);
        REQUIRE((int)q.alpha.size() == 2 * n - 1);
        for (double R = 0.25; R <= 10.0; R += 0.487) {
            const double a = q.eval(R);
            const double b = q_closed_form(n, R, 1.0);
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }
    }
}

TEST_CASE("closed form against sphere quadrature") {
    for (int n : {3, 4}) {
        const double c1 = calibrate_c1(n, kSpec);
        const SpaceForm space(n, -1.0);
        std::vector<double> zeta(n, 0.0);
        zeta[0] = 1.0;
        const HarmonicFunction atom = HarmonicFunction::poisson({{1.0, zeta}}, space);
        const PointFn p_sq = [&](std::span<const double> x) {
            const double v = atom.evaluate(x);
            return v * v;
        };
        for (double R : {0.25, 0.5, 1.0, 2.0, 3.0}) {
            const Integral quad = sphere_integral(space, R, p_sq, kSpec, atom.symmetry_axis());
            CHECK(q_closed_form(n, R, c1) == doctest::Approx(quad.value).epsilon(1e-6));
        }
    }
}

TEST_CASE("coefficients against a least-squares exponential fit of quadrature samples") {
    // fit sum_j beta_j e^{2jR} to 40 quadrature samples; the fitted betas must
    // reproduce the extracted alphas (independent oracle for the extraction)
    const int n = 3;
    const double c1 = calibrate_c1(n, kSpec);
    const QFormEvaluation q = q_coefficients(n, c1);
    const SpaceForm space(n, -1.0);
    const HarmonicFunction atom = HarmonicFunction::poisson({{1.0, {1, 0, 0}}}, space);
    const PointFn p_sq = [&](std::span<const double> x) {
        const double v = atom.evaluate(x);
        return v * v;
    };
    const int m = 40;
    std::vector<double> R(m), y(m);
    for (int i = 0; i < m; ++i) {
        R[i] = 0.2 + 2.3 * i / (m - 1);
        y[i] = sphere_integral(space, R[i], p_sq, kSpec, atom.symmetry_axis()).value;
    }
    // normal equations for the 5 exponentials, solved by Gaussian elimination
    const int k = 5;
    double A[5][6] = {};
    for (int i = 0; i < m; ++i) {
        double basis[5];
        for (int j = 0; j < k; ++j) basis[j] = std::exp(2.0 * (j - 2) * R[i]);
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c) A[r][c] += basis[r] * basis[c];
            A[r][k] += basis[r] * y[i];
        }
    }
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        for (int c = 0; c <= k; ++c) std::swap(A[piv][c], A[col][c]);
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const double factor = A[r][col] / A[col][col];
            for (int c = col; c <= k; ++c) A[r][c] -= factor * A[col][c];
        }
    }
    // agreement within 1e-5 relative to the coefficient scale
    const double scale = std::abs(q.alpha[4]);
    for (int j = 0; j < k; ++j) {
        const double beta = A[j][k] / A[j][j];
        CHECK(std::abs(beta - q.alpha[j]) < 1e-5 * scale);
    }
}

TEST_CASE("far-field growth rate 2(n-1)") {
    for (int n : {3, 4}) {
        const QFormEvaluation q = q_coefficients(n, 1.0);
        const double slope = std::log(q.eval(11.0)) - std::log(q.eval(10.0));
        CHECK(slope == doctest::Approx(2.0 * (n - 1)).epsilon(1e-3));
    }
}

TEST_CASE("positivity of Q on the tested range") {
    for (int n : {3, 4, 5}) {
        const QFormEvaluation q = q_coefficients(n, 1.0);
        for (double R = 0.05; R <= 10.0; R += 0.05) CHECK(q.eval(R) > 0.0);
    }
}

TEST_CASE("rescaled Q") {
    const double c1 = 4 * M_PI / 3;
    // k' = -1 reduces to the plain closed form
    for (double R : {0.5, 1.0, 2.0})
        CHECK(rescaled_q(3, -1.0, R, c1) == doctest::Approx(q_closed_form(3, R, c1)).epsilon(1e-14));

    // k' = -4, n=3: fitted growth exponent doubles to 8
    const double slope =
        std::log(rescaled_q(3, -4.0, 5.0, c1)) - std::log(rescaled_q(3, -4.0, 4.0, c1));
    CHECK(slope == doctest::Approx(8.0).epsilon(1e-3));

    // k' = -4 against quadrature on the rescaled ball model
    const SpaceForm space(3, -4.0);
    const HarmonicFunction atom = HarmonicFunction::poisson({{1.0, {1, 0, 0}}}, space);
    const PointFn p_sq = [&](std::span<const double> x) {
        const double v = atom.evaluate(x);
        return v * v;
    };
    for (double R : {0.5, 1.0}) {
        const Integral quad = sphere_integral(space, R, p_sq, kSpec, atom.symmetry_axis());
        CHECK(rescaled_q(3, -4.0, R, c1) == doctest::Approx(quad.value).epsilon(1e-6));
    }
    CHECK_THROWS_AS(rescaled_q(3, 0.0, 1.0, c1), DomainError);
}

TEST_CASE("q ball closed form integrates Q") {
    const double c1 = 4 * M_PI / 3;
    // exact: int_0^R Q = (pi/6)(sinh 4R - 2 sinh 2R) for n=3, k=-1
    for (double R : {0.5, 1.0, 3.0})
        CHECK(q_ball_closed_form(3, -1.0, R, c1) ==
              doctest::Approx(oracles::SingleAtomH3::B(R)).epsilon(1e-12));
    // rescaled: Simpson oracle over rescaled_q
    const double R = 1.25, kp = -2.25;
    const double expected = oracles::adaptive_simpson(
        [&](double r) { return r <= 0 ? 0.0 : rescaled_q(3, kp, r, c1); }, 0.0, R, 1e-12);
    CHECK(q_ball_closed_form(3, kp, R, c1) == doctest::Approx(expected).epsilon(1e-10));
}
