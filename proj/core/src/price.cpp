#include "pricelab/price.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "pricelab/hypergeom.hpp"

namespace pricelab {

namespace {

constexpr double kMuDivisionGuard = 1e-12;

void check_pinching(const SpaceForm& k_space, const SpaceForm& kprime_space) {
    if (k_space.dim != kprime_space.dim)
        throw DomainError("price_envelopes: pinching pair must share the dimension");
    if (kprime_space.curvature > k_space.curvature)
        throw DomainError("price_envelopes: requires k' <= k <= 0");
}

// inf/sup of ratios over the grid prefix with R <= limit
std::pair<double, double> ratio_window(std::span<const double> r, std::span<const double> ratio,
                                       double limit) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] > limit + 1e-12) continue;
        lo = std::min(lo, ratio[i]);
        hi = std::max(hi, ratio[i]);
    }
    return {lo, hi};
}

} // namespace

double fit_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("fit_log_slope: need at least two samples");
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(y[i] > 0.0)) throw DomainError("fit_log_slope: values must be positive");
        const double ly = std::log(y[i]);
        sx += x[i];
        sy += ly;
        sxx += x[i] * x[i];
        sxy += x[i] * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw DomainError("fit_log_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

EnvelopeReport price_envelopes(std::span<const MuSample> mu_samples, const SpaceForm& k_space,
                               const SpaceForm& kprime_space, double r0) {
    check_pinching(k_space, kprime_space);
    if (mu_samples.size() < 2) throw DomainError("price_envelopes: need at least two samples");
    if (std::abs(mu_samples.front().R - r0) > 1e-9)
        throw DomainError("price_envelopes: grid must start at the calibration radius R0");

    EnvelopeReport report;
    report.r_grid.reserve(mu_samples.size());
    double prev = -1.0;
    for (const MuSample& s : mu_samples) {
        if (!(s.R > prev)) throw DomainError("price_envelopes: grid must be strictly increasing");
        prev = s.R;
        if (s.mu < 0.0 || s.mu >= 1.0 - kMuDivisionGuard)
            throw NumericalViolationError(
                "price_envelopes: mu sample outside [0, 1); upstream numerics are broken");
        report.r_grid.push_back(s.R);
    }

    // cumulative trapezoid of H/(1-mu) on the sample grid
    const auto integrate = [&](const SpaceForm& space, std::vector<double>& env) {
        env.assign(mu_samples.size(), 1.0);
        double acc = 0.0;
        for (std::size_t i = 1; i < mu_samples.size(); ++i) {
            const double h0 = mean_curvature(space, mu_samples[i - 1].R) /
                              (1.0 - mu_samples[i - 1].mu);
            const double h1 = mean_curvature(space, mu_samples[i].R) / (1.0 - mu_samples[i].mu);
            acc += 0.5 * (h0 + h1) * (mu_samples[i].R - mu_samples[i - 1].R);
            env[i] = std::exp(acc);
        }
    };
    integrate(k_space, report.lower_env);
    integrate(kprime_space, report.upper_env);
    report.lower_exponent = fit_log_slope(report.r_grid, report.lower_env);
    report.upper_exponent = fit_log_slope(report.r_grid, report.upper_env);
    return report;
}

EnvelopeReport verify_double_sided(const HarmonicFunction& f, const SpaceForm& space,
                                   const SpaceForm& kprime_space, std::span<const double> r_grid,
                                   const QuadratureSpec& spec, double slack, std::uint64_t seed,
                                   std::vector<GrowthSample>* profile_out) {
    if (f.is_constant())
        throw DomainError("verify_double_sided: requires a non-constant harmonic function");

    const std::vector<GrowthSample> profile = growth_profile(f, space, r_grid, spec, seed);
    if (profile_out) *profile_out = profile;
    std::vector<MuSample> mu;
    mu.reserve(profile.size());
    for (const GrowthSample& s : profile) mu.push_back({s.R, s.mu});

    EnvelopeReport report = price_envelopes(mu, space, kprime_space, r_grid.front());
    report.slack = slack;

    std::vector<double> ratio_lo(profile.size()), ratio_hi(profile.size()), ball(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) {
        ratio_lo[i] = profile[i].ball_energy / report.lower_env[i];
        ratio_hi[i] = profile[i].ball_energy / report.upper_env[i];
        ball[i] = profile[i].ball_energy;
    }
    const double r_mid = r_grid.front() + 0.5 * (r_grid.back() - r_grid.front());
    report.C1_half = ratio_window(report.r_grid, ratio_lo, r_mid).first;
    report.C2_half = ratio_window(report.r_grid, ratio_hi, r_mid).second;
    report.C1 = ratio_window(report.r_grid, ratio_lo, r_grid.back()).first;
    report.C2 = ratio_window(report.r_grid, ratio_hi, r_grid.back()).second;
    report.stability_ok =
        report.C1 >= report.C1_half / slack && report.C2 <= report.C2_half * slack;
    report.ball_exponent = fit_log_slope(report.r_grid, ball);
    return report;
}

EnvelopeReport verify_double_sided(const HarmonicFunction& f, const SpaceForm& space,
                                   std::span<const double> r_grid, const QuadratureSpec& spec,
                                   double slack, std::uint64_t seed) {
    return verify_double_sided(f, space, space, r_grid, spec, slack, seed);
}

EnergyWindowReport energy_window_report(const HarmonicFunction& f, const SpaceForm& space,
                                        std::span<const double> r_grid, const QuadratureSpec& spec,
                                        double tail_rel_tol, double slack, std::uint64_t seed) {
    const std::vector<GrowthSample> profile = growth_profile(f, space, r_grid, spec, seed);
    const double r_max = r_grid.back();

    EnergyWindowReport report;
    report.slack = slack;
    report.r_grid.assign(r_grid.begin(), r_grid.end());

    // Dirichlet tail: compare D at R_max against D at the closest grid point <= R_max/2
    const GrowthSample& last = profile.back();
    const GrowthSample* half = &profile.front();
    for (const GrowthSample& s : profile)
        if (s.R <= 0.5 * r_max + 1e-12) half = &s;
    report.sigma = last.dirichlet;
    report.dirichlet_tail_rel =
        (last.dirichlet > 0.0) ? (last.dirichlet - half->dirichlet) / last.dirichlet : 0.0;
    report.dirichlet_bounded = report.dirichlet_tail_rel < tail_rel_tol;

    report.ratios.resize(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i)
        report.ratios[i] = profile[i].ball_energy / sphere_area(space, profile[i].R);
    const double r_mid = r_grid.front() + 0.5 * (r_max - r_grid.front());
    std::tie(report.min_half, report.max_half) = ratio_window(report.r_grid, report.ratios, r_mid);
    std::tie(report.min_ratio, report.max_ratio) =
        ratio_window(report.r_grid, report.ratios, r_max);
    report.stability_ok = report.min_ratio >= report.min_half / slack &&
                          report.max_ratio <= report.max_half * slack &&
                          report.min_ratio > 0.0 && std::isfinite(report.max_ratio);

    // mu decay bound mu(R) <= 2 sigma R / (c sinh^{n-1}(sqrt|k| R)); exercised on
    // hyperbolic spaces where the comparison sphere growth is exponential.
    if (space.hyperbolic()) {
        const double a = space.sqrt_abs_k();
        const int m = space.dim - 1;
        double c = std::numeric_limits<double>::infinity();
        for (const GrowthSample& s : profile)
            c = std::min(c, s.sphere_energy / std::pow(std::sinh(a * s.R), m));
        report.c_calibrated = c;
        report.mu_decay_bound_ok = true;
        for (const GrowthSample& s : profile) {
            const double bound =
                2.0 * report.sigma * s.R / (c * std::pow(std::sinh(a * s.R), m));
            if (!(s.mu <= bound * (1.0 + 1e-12))) report.mu_decay_bound_ok = false;
        }
    }
    return report;
}

EnergyWindowReport bounded_energy_window_check(const HarmonicFunction& f, const SpaceForm& space,
                                               std::span<const double> r_grid,
                                               const QuadratureSpec& spec, double tail_rel_tol,
                                               double slack, std::uint64_t seed) {
    EnergyWindowReport report =
        energy_window_report(f, space, r_grid, spec, tail_rel_tol, slack, seed);
    if (!report.dirichlet_bounded)
        throw DomainError("bounded_energy_window_check: not finite Dirichlet energy "
                          "(tail above the declared tolerance)");
    return report;
}

ExponentReport growth_exponent_window(const HarmonicFunction& f, const SpaceForm& space,
                                      std::span<const double> far_grid,
                                      const QuadratureSpec& spec, std::uint64_t seed) {
    if (!f.is_positive())
        throw DomainError("growth_exponent_window: requires a positive harmonic function");
    if (far_grid.size() < 2) throw DomainError("growth_exponent_window: need at least two radii");
    if (!space.hyperbolic())
        throw DomainError("growth_exponent_window: exponential window requires curvature < 0");

    ExponentReport report;
    const double a = space.sqrt_abs_k();
    report.lower_endpoint = (space.dim - 1) * a;
    report.upper_endpoint = 2.0 * (space.dim - 1) * a;
    report.tol = 0.1 * report.lower_endpoint;

    std::vector<double> ball(far_grid.size());
    const bool single_atom = f.kind() == HarmonicFunction::Kind::Poisson &&
                             f.atoms().size() == 1 && space.dim >= 3 && space.hyperbolic();
    if (f.kind() == HarmonicFunction::Kind::Constant) {
        const double c2 = f.constant_value() * f.constant_value();
        for (std::size_t i = 0; i < far_grid.size(); ++i)
            ball[i] = c2 * ball_volume(space, far_grid[i]);
        report.method = ExponentMethod::ClosedForm;
    } else if (single_atom) {
        // quadrature near the ball boundary is the most fragile computation in the
        // artifact; the calibrated closed form replaces it on the far grid
        const double c1 = calibrate_c1(space.dim, spec);
        const double w2 = f.atoms().front().weight * f.atoms().front().weight;
        for (std::size_t i = 0; i < far_grid.size(); ++i)
            ball[i] = w2 * q_ball_closed_form(space.dim, space.curvature, far_grid[i], c1);
        report.method = ExponentMethod::ClosedForm;
    } else {
        const std::vector<GrowthSample> profile =
            growth_profile(f, space, far_grid, spec, seed);
        for (std::size_t i = 0; i < profile.size(); ++i) ball[i] = profile[i].ball_energy;
        report.method = ExponentMethod::Quadrature;
    }

    report.lambda = fit_log_slope(far_grid, ball);
    report.within_window = report.lambda >= report.lower_endpoint - report.tol &&
                           report.lambda <= report.upper_endpoint + report.tol;
    return report;
}

} // namespace pricelab
