#include "pricelab/spaceform.hpp"

#include <cmath>
#include <limits>

namespace pricelab {

double SpaceForm::sqrt_abs_k() const {
    return std::sqrt(-curvature);
}

double unit_sphere_area(int n) {
    if (n < 1) throw DomainError("unit_sphere_area: n must be >= 1");
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

double mean_curvature(const SpaceForm& space, double r) {
    if (!(r > 0.0)) throw DomainError("mean_curvature: r must be > 0");
    const double m = space.dim - 1;
    if (space.curvature == 0.0) return m / r;
    const double a = space.sqrt_abs_k();
    return m * a / std::tanh(a * r);
}

double sphere_area(const SpaceForm& space, double R) {
    if (R < 0.0) throw DomainError("sphere_area: R must be >= 0");
    const int n = space.dim;
    const double omega = unit_sphere_area(n);
    if (space.curvature == 0.0) return omega * std::pow(R, n - 1);
    const double a = space.sqrt_abs_k();
    return omega * std::pow(std::sinh(a * R) / a, n - 1);
}

// Integrate sphere_area exactly: expand (sinh(aR)/a)^{n-1} binomially into
// exponentials.  Monomial case handles k = 0.
double ball_volume(const SpaceForm& space, double R) {
    if (R < 0.0) throw DomainError("ball_volume: R must be >= 0");
    const int n = space.dim;
    const double omega = unit_sphere_area(n);
    if (space.curvature == 0.0) return omega * std::pow(R, n) / n;

    const double a = space.sqrt_abs_k();
    const int m = n - 1;
    // (sinh(as)/a)^m = (2a)^{-m} sum_i C(m,i) (-1)^{m-i} e^{(2i-m) a s}
    double sum = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= m; ++i) {
        const double sign = ((m - i) % 2 == 0) ? 1.0 : -1.0;
        const int j = 2 * i - m;
        const double integral = (j == 0) ? R : std::expm1(j * a * R) / (j * a);
        sum += sign * binom * integral;
        binom = binom * (m - i) / (i + 1);
    }
    return omega * std::pow(2.0 * a, -(double)m) * sum;
}

double geodesic_to_ball_radius(const SpaceForm& space, double R) {
    if (!space.hyperbolic())
        throw UnsupportedSpaceError("geodesic_to_ball_radius: requires curvature < 0");
    if (R < 0.0) throw DomainError("geodesic_to_ball_radius: R must be >= 0");
    return std::tanh(0.5 * space.sqrt_abs_k() * R);
}

double ball_to_geodesic_radius(const SpaceForm& space, double rho) {
    if (!space.hyperbolic())
        throw UnsupportedSpaceError("ball_to_geodesic_radius: requires curvature < 0");
    if (rho < 0.0 || rho >= 1.0)
        throw DomainError("ball_to_geodesic_radius: rho must lie in [0, 1)");
    return 2.0 * std::atanh(rho) / space.sqrt_abs_k();
}

double conformal_factor(const SpaceForm& space, double rho_sq) {
    if (!space.hyperbolic())
        throw UnsupportedSpaceError("conformal_factor: requires curvature < 0");
    if (rho_sq >= 1.0) throw DomainError("conformal_factor: point outside the model ball");
    return 2.0 / (space.sqrt_abs_k() * (1.0 - rho_sq));
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm_sq(std::span<const double> a) {
    return dot(a, a);
}

std::vector<double> normalized(std::span<const double> a) {
    const double n = std::sqrt(norm_sq(a));
    if (n == 0.0) throw DomainError("normalized: zero vector");
    std::vector<double> out(a.begin(), a.end());
    for (double& x : out) x /= n;
    return out;
}

} // namespace pricelab
