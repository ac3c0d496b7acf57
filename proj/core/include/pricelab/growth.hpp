#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pricelab/harmonics.hpp"
#include "pricelab/quadrature.hpp"
#include "pricelab/spaceform.hpp"

namespace pricelab {

// One growth-profile sample.  All integrals are taken about the origin:
//   S(R) = int_{S_R} f^2,  B(R) = int_{B_R} f^2,  D(R) = int_{B_R} |grad f|^2,
//   E(R) = 2 int_0^R D(r) dr,  mu = E/S,  almgren = R D / S.
// h_ball_energy stores int_{B_R} H_k(r) f^2, the divergence-identity partner of S.
struct GrowthSample {
    double R = 0.0;
    double sphere_energy = 0.0;
    double ball_energy = 0.0;
    double dirichlet = 0.0;
    double iterated = 0.0;
    double mu = 0.0;
    double almgren = 0.0;
    double h_ball_energy = 0.0;
    // quadrature error estimates, for residual bounds
    double err_sphere = 0.0, err_ball = 0.0, err_dirichlet = 0.0, err_iterated = 0.0,
           err_h_ball = 0.0;
};

// Full growth profile of f over a strictly increasing positive grid.  Gates on the
// finite-difference harmonicity residual at seeded sample points before integrating,
// and refuses (NumericalViolationError) to return samples with mu >= 1.
std::vector<GrowthSample> growth_profile(const HarmonicFunction& f, const SpaceForm& space,
                                         std::span<const double> r_grid,
                                         const QuadratureSpec& spec, std::uint64_t seed = 12345);

// mu of a degree-d homogeneous harmonic polynomial on R^n: 2d / (2d + n - 1).
double mu_closed_form(int degree, int dim);

struct PolynomialSpectrum {
    int dim = 3;
    std::vector<SpectrumEntry> entries; // strictly increasing degrees, positive epsilons
};

// Exact derivative of the mu-function of a finite Euclidean spectrum:
//   mu'(R) = [ sum_{j<k} 2 (d_k - d_j)(mu_k - mu_j) eps_j eps_k R^{2(d_j+d_k-2d_1)-1} ]
//            / ( sum_j eps_j R^{2(d_j-d_1)} )^2 .
// Nonnegative; zero exactly when the spectrum has a single entry.
double mu_prime_series(const PolynomialSpectrum& spectrum, double R);

// Almgren frequency U = R * D / S of one sample (requires S > 0).
double almgren_frequency(const GrowthSample& sample);

// Divergence-identity residual |S - int H f^2 - E| / S per sample, with the bound
// 5 * max(target_rel_tol, combined error estimate / S) it must stay under.
struct DivergenceCheck {
    std::vector<double> residual_rel;
    std::vector<double> bound_rel;
    bool ok = true;
};
DivergenceCheck divergence_identity_check(std::span<const GrowthSample> profile,
                                          const QuadratureSpec& spec);

// Helper shared by the profile gate and the acceptance suite: deterministic sample
// points inside the model (Euclidean radius `radius`), seeded.
std::vector<std::vector<double>> seeded_ball_points(int dim, double radius, int count,
                                                    std::uint64_t seed);

} // namespace pricelab
