#pragma once

#include <span>
#include <vector>

#include "pricelab/growth.hpp"
#include "pricelab/harmonics.hpp"
#include "pricelab/spaceform.hpp"

namespace pricelab {

struct MuSample {
    double R;
    double mu;
};

// Double-sided envelope data calibrated at R0:
//   lower_env(R) = exp int_{R0}^R H_k /(1-mu),  upper_env with H_{k'},
// cumulative trapezoid over the sample grid.  C1/C2 are the sharpest grid constants
// inf/sup of B(R)/env(R); the half-grid pair backs the stability diagnostic.
struct EnvelopeReport {
    std::vector<double> r_grid;
    std::vector<double> lower_env;
    std::vector<double> upper_env;
    double C1 = 0.0, C2 = 0.0;
    double C1_half = 0.0, C2_half = 0.0;
    bool stability_ok = false;
    double slack = 1.5;
    double lower_exponent = 0.0; // fitted log-slope of lower_env
    double upper_exponent = 0.0; // fitted log-slope of upper_env
    double ball_exponent = 0.0;  // fitted log-slope of B(R) when a profile backs the report
};

// Envelope part only (no ratios): mu samples must lie in [0, 1), grid increasing and
// starting at R0.  Guards against mu >= 1 - 1e-12: mu < 1 holds identically on these
// spaces, so hitting the guard means upstream numerics failed.
EnvelopeReport price_envelopes(std::span<const MuSample> mu_samples, const SpaceForm& k_space,
                               const SpaceForm& kprime_space, double r0 = 1.0);

// Full double-sided verification: profile on the space the function lives on, then
// envelopes for the pinching pair and the trapped-ratio constants
//   C1 = inf B(R)/lower_env(R),  C2 = sup B(R)/upper_env(R)
// with the half-grid stability diagnostic.  On a space form the pair coincides.
EnvelopeReport verify_double_sided(const HarmonicFunction& f, const SpaceForm& space,
                                   const SpaceForm& kprime_space, std::span<const double> r_grid,
                                   const QuadratureSpec& spec, double slack = 1.5,
                                   std::uint64_t seed = 12345,
                                   std::vector<GrowthSample>* profile_out = nullptr);
EnvelopeReport verify_double_sided(const HarmonicFunction& f, const SpaceForm& space,
                                   std::span<const double> r_grid, const QuadratureSpec& spec,
                                   double slack = 1.5, std::uint64_t seed = 12345);

// Bounded-Dirichlet-energy scenario.  `sigma` is the observed plateau D(R_max); the
// mu decay bound is  mu(R) <= 2 sigma R / (c sinh^{n-1}(sqrt|k| R))  with c calibrated
// as the observed inf of S(R)/sinh^{n-1}(sqrt|k| R).
struct EnergyWindowReport {
    std::vector<double> r_grid;
    std::vector<double> ratios; // B(R) / sphere_area(R)
    double min_ratio = 0.0, max_ratio = 0.0;
    double min_half = 0.0, max_half = 0.0;
    bool stability_ok = false;
    double slack = 1.5;
    double dirichlet_tail_rel = 0.0; // (D(Rmax) - D(Rmax/2)) / D(Rmax)
    bool dirichlet_bounded = false;
    double sigma = 0.0;
    double c_calibrated = 0.0;
    bool mu_decay_bound_ok = false;
};

// Non-throwing worker: computes the report including the tail diagnostic.
EnergyWindowReport energy_window_report(const HarmonicFunction& f, const SpaceForm& space,
                                        std::span<const double> r_grid, const QuadratureSpec& spec,
                                        double tail_rel_tol = 0.01, double slack = 1.5,
                                        std::uint64_t seed = 12345);

// Spec'd operation: throws DomainError("not finite Dirichlet energy") when the tail
// precondition fails (the expected outcome for e.g. the Poisson kernel).
EnergyWindowReport bounded_energy_window_check(const HarmonicFunction& f, const SpaceForm& space,
                                               std::span<const double> r_grid,
                                               const QuadratureSpec& spec,
                                               double tail_rel_tol = 0.01, double slack = 1.5,
                                               std::uint64_t seed = 12345);

enum class ExponentMethod { ClosedForm, Quadrature };

struct ExponentReport {
    double lambda = 0.0;          // least-squares slope of log B(R) vs R
    double lower_endpoint = 0.0;  // (n-1) sqrt|k|
    double upper_endpoint = 0.0;  // 2 (n-1) sqrt|k'| (= same k on a space form)
    double tol = 0.0;             // 0.1 * lower_endpoint
    bool within_window = false;
    ExponentMethod method = ExponentMethod::Quadrature;
};

// Far-grid growth-exponent fit for positive harmonic functions.  Single Poisson atoms
// (n >= 3) and constants use exact closed forms for B(R); anything else falls back to
// quadrature, which is the fragile path near the ball boundary.
ExponentReport growth_exponent_window(const HarmonicFunction& f, const SpaceForm& space,
                                      std::span<const double> far_grid,
                                      const QuadratureSpec& spec, std::uint64_t seed = 12345);

// OLS slope of log(y) against x; requires y > 0 and at least two points.
double fit_log_slope(std::span<const double> x, std::span<const double> y);

} // namespace pricelab
