#include "pricelab/hypergeom.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>

#include "pricelab/harmonics.hpp"

namespace pricelab {

namespace {

void check_terminating_dimension(int n) {
    if (n < 3)
        throw UnsupportedSpaceError(
            "Q closed form: series terminates only for n >= 3 (use quadrature for n = 2)");
}

// Exact rational with overflow-checked arithmetic; magnitudes here stay tiny.
struct Rational {
    long long num = 0, den = 1;

    static Rational of(long long n, long long d = 1) {
        Rational r{n, d};
        r.normalize();
        return r;
    }
    void normalize() {
        if (den == 0) throw DomainError("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    static long long checked_mul(long long a, long long b) {
        const __int128 p = (__int128)a * b;
        if (p > INT64_MAX || p < INT64_MIN)
            throw DomainError("Rational: overflow (dimension too large for exact coefficients)");
        return (long long)p;
    }
    Rational operator*(const Rational& o) const {
        return of(checked_mul(num, o.num), checked_mul(den, o.den));
    }
    Rational operator+(const Rational& o) const {
        return of(checked_mul(num, o.den) + checked_mul(o.num, den), checked_mul(den, o.den));
    }
    double to_double() const { return (double)num / (double)den; }
    bool is_zero() const { return num == 0; }
};

// Series coefficients f_m of 2F1(1-n, (n-1)/2, (5-3n)/2; z), m = 0..n-1, exact.
// Half-integer parameters are handled by doubling: b+m = (2b+2m)/2, c+m = (2c+2m)/2.
std::vector<Rational> terminating_series_coefficients(int n) {
    const int a = 1 - n;
    const long long two_b = n - 1;     // 2b
    const long long two_c = 5 - 3LL * n; // 2c
    std::vector<Rational> f;
    f.reserve(n);
    f.push_back(Rational::of(1));
    for (int m = 0; m < n - 1; ++m) {
        const long long an = a + m;
        const long long bn = two_b + 2LL * m;
        const long long cn = two_c + 2LL * m;
        if (cn == 0 && an != 0)
            throw ParameterConflictError(
                "2F1 parameters: Pochhammer factor of c vanishes before truncation");
        f.push_back(f.back() * Rational::of(an * bn, cn * (m + 1LL)));
    }
    return f;
}

} // namespace

double hyp2f1_terminating(int a, double b, double c, double z) {
    if (a > 0) throw DomainError("hyp2f1_terminating: a must be a nonpositive integer");
    const int mmax = -a;
    double term = 1.0;
    double acc = 0.0, comp = 0.0; // Kahan
    for (int m = 0; m <= mmax; ++m) {
        const double y = term - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        if (m == mmax) break;
        const double cn = c + m;
        if (cn == 0.0)
            throw ParameterConflictError(
                "hyp2f1_terminating: Pochhammer factor of c vanishes before truncation");
        term *= (a + m) * (b + m) * z / (cn * (m + 1));
    }
    return acc;
}

double q_closed_form(int n, double R, double c1) {
    check_terminating_dimension(n);
    if (!(R > 0.0)) throw DomainError("q_closed_form: R must be > 0");
    const double f = hyp2f1_terminating(1 - n, 0.5 * (n - 1), 0.5 * (5 - 3 * n), std::exp(2.0 * R));
    return c1 * std::pow(std::sinh(R), n - 1) * f / std::exp((n - 1) * R);
}

QFormEvaluation q_coefficients(int n, double c1) {
    check_terminating_dimension(n);
    const std::vector<Rational> f = terminating_series_coefficients(n);
    const int m = n - 1;

    // sinh^{n-1}(R)/e^{(n-1)R} = 2^{-m} (1 - e^{-2R})^m = 2^{-m} sum_i C(m,i) (-1)^i e^{-2iR};
    // convolve with the series in e^{2R} and collect the 2n-1 exponents 2jR.
    std::vector<Rational> binom(m + 1);
    binom[0] = Rational::of(1);
    for (int i = 1; i <= m; ++i)
        binom[i] = binom[i - 1] * Rational::of(-(m - i + 1), i);

    std::vector<Rational> alpha(2 * m + 1); // index j + m, j = -m..m
    for (int i = 0; i <= m; ++i)
        for (int s = 0; s < (int)f.size(); ++s)
            alpha[s - i + m] = alpha[s - i + m] + binom[i] * f[s];

    Rational scale = Rational::of(1);
    for (int i = 0; i < m; ++i) scale = scale * Rational::of(1, 2);
    Rational total = Rational::of(0);
    for (Rational& a : alpha) {
        a = a * scale;
        total = total + a;
    }
    // Q(0) = 0 forces the coefficients to sum to zero; the convolution preserves
    // this identically in exact arithmetic.
    if (!total.is_zero())
        throw NumericalViolationError("q_coefficients: exponential coefficients do not sum to 0");

    QFormEvaluation q;
    q.dim = n;
    q.c1 = c1;
    q.alpha.reserve(alpha.size());
    for (const Rational& a : alpha) q.alpha.push_back(c1 * a.to_double());
    if (q.alpha.back() == 0.0)
        throw NumericalViolationError("q_coefficients: vanishing leading coefficient");
    return q;
}

double QFormEvaluation::eval(double R) const {
    const int m = dim - 1;
    double acc = 0.0, comp = 0.0;
    for (int j = -m; j <= m; ++j) {
        const double term = alpha[j + m] * std::exp(2.0 * j * R);
        const double y = term - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return acc;
}

double rescaled_q(int n, double kprime, double R, double c1) {
    check_terminating_dimension(n);
    if (!(kprime < 0.0)) throw DomainError("rescaled_q: requires kprime < 0");
    const double a = std::sqrt(-kprime);
    return std::pow(a, -(n - 1)) * q_closed_form(n, a * R, c1);
}

double q_ball_closed_form(int n, double kprime, double R, double c1) {
    check_terminating_dimension(n);
    if (!(kprime < 0.0)) throw DomainError("q_ball_closed_form: requires kprime < 0");
    if (!(R > 0.0)) throw DomainError("q_ball_closed_form: R must be > 0");
    const double a = std::sqrt(-kprime);
    const QFormEvaluation q = q_coefficients(n, c1);
    const int m = n - 1;
    // int_0^R Q(sqrt|k'| r) dr, term by term
    double acc = 0.0, comp = 0.0;
    for (int j = -m; j <= m; ++j) {
        const double coeff = q.alpha[j + m];
        const double integral = (j == 0) ? R : std::expm1(2.0 * j * a * R) / (2.0 * j * a);
        const double term = coeff * integral;
        const double y = term - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return std::pow(a, -(n - 1)) * acc;
}

double calibrate_c1(int n, const QuadratureSpec& spec) {
    check_terminating_dimension(n);
    const SpaceForm space(n, -1.0);
    std::vector<double> zeta(n, 0.0);
    zeta[0] = 1.0;
    const HarmonicFunction kernel = HarmonicFunction::poisson({{1.0, zeta}}, space);
    const PointFn p_sq = [&](std::span<const double> x) {
        const double v = kernel.evaluate(x);
        return v * v;
    };
    const Integral anchor = sphere_integral(space, 1.0, p_sq, spec, kernel.symmetry_axis());
    return anchor.value / q_closed_form(n, 1.0, 1.0);
}

} // namespace pricelab
