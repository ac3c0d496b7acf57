#include "pricelab/growth.hpp"

#include <cmath>

namespace pricelab {

namespace {

constexpr double kHarmonicityGateTol = 1e-4;

void require_same_space(const HarmonicFunction& f, const SpaceForm& space) {
    if (f.space().dim != space.dim || f.space().curvature != space.curvature)
        throw DomainError("growth_profile: function home space differs from the given space");
}

// splitmix64: sample points must be identical across platforms and standard
// libraries, so no std::*_distribution here
double unit_uniform(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return (double)(z >> 11) * 0x1.0p-53; // [0, 1)
}

double unit_gaussian(std::uint64_t& state) {
    double u1 = unit_uniform(state);
    const double u2 = unit_uniform(state);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace

std::vector<std::vector<double>> seeded_ball_points(int dim, double radius, int count,
                                                    std::uint64_t seed) {
    std::uint64_t state = seed * 0x9e3779b97f4a7c15ull + 0x243f6a8885a308d3ull;
    std::vector<std::vector<double>> points;
    points.reserve(count);
    for (int k = 0; k < count; ++k) {
        std::vector<double> dir(dim);
        double nrm = 0.0;
        do {
            for (double& c : dir) c = unit_gaussian(state);
            nrm = std::sqrt(norm_sq(dir));
        } while (nrm < 1e-12);
        const double r = radius * std::pow(0.05 + 0.95 * unit_uniform(state), 1.0 / dim);
        for (double& c : dir) c *= r / nrm;
        points.push_back(std::move(dir));
    }
    return points;
}

std::vector<GrowthSample> growth_profile(const HarmonicFunction& f, const SpaceForm& space,
                                         std::span<const double> r_grid,
                                         const QuadratureSpec& spec, std::uint64_t seed) {
    require_same_space(f, space);
    spec.validate();
    if (r_grid.empty()) throw DomainError("growth_profile: empty grid");

    // harmonicity gate: catches mis-specified catalog entries before any integral runs.
    // The finite-difference residual scales with the local function size and with h^2,
    // so the 1e-4 gate is applied relative to max(1, |f|) at a reduced step.
    const double gate_radius = space.hyperbolic() ? 0.05 : 0.5;
    const double gate_h = 5e-4;
    for (const auto& x : seeded_ball_points(space.dim, gate_radius, 20, seed)) {
        const double res = f.harmonicity_residual(x, gate_h);
        const double scale = std::max(1.0, std::abs(f.evaluate(x)));
        if (!(res < kHarmonicityGateTol * scale))
            throw DomainError("growth_profile: harmonicity residual gate failed");
    }

    const auto axis = f.symmetry_axis();
    const PointFn f_sq = [&](std::span<const double> x) {
        const double v = f.evaluate(x);
        return v * v;
    };
    const PointFn grad_sq = [&](std::span<const double> x) {
        return f.riemannian_grad_norm_sq(x);
    };
    const std::function<double(double)> mean_curv = [&](double r) {
        return mean_curvature(space, r);
    };

    const CumulativeProfile dirichlet = cumulative_profile(space, r_grid, grad_sq, spec, axis);
    const CumulativeProfile energy = cumulative_profile(space, r_grid, f_sq, spec, axis, mean_curv);

    std::vector<GrowthSample> out;
    out.reserve(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        GrowthSample s;
        s.R = r_grid[i];
        const Integral sph = sphere_integral(space, s.R, f_sq, spec, axis);
        s.sphere_energy = sph.value;
        s.err_sphere = sph.err_est;
        s.ball_energy = energy.running[i].value;
        s.err_ball = energy.running[i].err_est;
        s.h_ball_energy = energy.weighted[i].value;
        s.err_h_ball = energy.weighted[i].err_est;
        s.dirichlet = dirichlet.running[i].value;
        s.err_dirichlet = dirichlet.running[i].err_est;
        s.iterated = 2.0 * dirichlet.iterated[i].value;
        s.err_iterated = 2.0 * dirichlet.iterated[i].err_est;

        if (!(s.sphere_energy > 0.0))
            throw DomainError("growth_profile: sphere energy vanished (trivial function?)");
        // quadrature noise can leave a tiny negative Dirichlet mass for constants
        if (s.dirichlet < 0.0 && s.dirichlet > -1e-13 * s.sphere_energy) s.dirichlet = 0.0;
        if (s.iterated < 0.0 && s.iterated > -1e-13 * s.sphere_energy) s.iterated = 0.0;

        s.mu = s.iterated / s.sphere_energy;
        if (s.mu >= 1.0)
            throw NumericalViolationError("growth_profile: mu >= 1; upstream quadrature is broken");
        if (s.mu < 0.0)
            throw NumericalViolationError("growth_profile: mu < 0; upstream quadrature is broken");
        s.almgren = s.R * s.dirichlet / s.sphere_energy;
        out.push_back(s);
    }
    return out;
}

double mu_closed_form(int degree, int dim) {
    if (degree < 0) throw DomainError("mu_closed_form: degree must be >= 0");
    if (dim < 2) throw DomainError("mu_closed_form: dim must be >= 2");
    return 2.0 * degree / (2.0 * degree + dim - 1.0);
}

double mu_prime_series(const PolynomialSpectrum& spectrum, double R) {
    if (spectrum.entries.empty()) throw DomainError("mu_prime_series: empty spectrum");
    if (!(R > 0.0)) throw DomainError("mu_prime_series: R must be > 0");
    const int n = spectrum.dim;
    if (n < 2) throw DomainError("mu_prime_series: dim must be >= 2");
    int prev_degree = -1;
    for (const SpectrumEntry& e : spectrum.entries) {
        if (e.degree <= prev_degree)
            throw DomainError("mu_prime_series: degrees must be strictly increasing");
        if (!(e.epsilon > 0.0)) throw DomainError("mu_prime_series: epsilons must be > 0");
        prev_degree = e.degree;
    }

    const auto& es = spectrum.entries;
    const int d1 = es.front().degree;
    double num = 0.0;
    for (std::size_t j = 0; j < es.size(); ++j) {
        for (std::size_t k = j + 1; k < es.size(); ++k) {
            const double dd = es[k].degree - es[j].degree;
            const double dmu = mu_closed_form(es[k].degree, n) - mu_closed_form(es[j].degree, n);
            const int expo = 2 * (es[j].degree + es[k].degree - 2 * d1) - 1;
            num += 2.0 * dd * dmu * es[j].epsilon * es[k].epsilon * std::pow(R, expo);
        }
    }
    double den = 0.0;
    for (const SpectrumEntry& e : es) den += e.epsilon * std::pow(R, 2 * (e.degree - d1));
    return num / (den * den);
}

double almgren_frequency(const GrowthSample& sample) {
    if (!(sample.sphere_energy > 0.0))
        throw DomainError("almgren_frequency: requires positive sphere energy");
    return sample.R * sample.dirichlet / sample.sphere_energy;
}

DivergenceCheck divergence_identity_check(std::span<const GrowthSample> profile,
                                          const QuadratureSpec& spec) {
    DivergenceCheck check;
    check.residual_rel.reserve(profile.size());
    check.bound_rel.reserve(profile.size());
    for (const GrowthSample& s : profile) {
        const double residual =
            std::abs(s.sphere_energy - s.h_ball_energy - s.iterated) / s.sphere_energy;
        const double combined =
            (s.err_sphere + s.err_h_ball + s.err_iterated) / s.sphere_energy;
        const double bound = 5.0 * std::max(spec.target_rel_tol, combined);
        check.residual_rel.push_back(residual);
        check.bound_rel.push_back(bound);
        if (!(residual < bound)) check.ok = false;
    }
    return check;
}

} // namespace pricelab
