#pragma once

#include <span>
#include <vector>

#include "pricelab/errors.hpp"

namespace pricelab {

// Simply connected model space of constant sectional curvature k <= 0:
// Euclidean space for k = 0, rescaled real-hyperbolic space for k < 0.
// Hyperbolic spaces are realized on the Poincare unit ball with metric
// (2 / (sqrt|k| (1 - |x|^2)))^2 * delta, so every consumer of coordinates
// goes through the dictionary below.
struct SpaceForm {
    int dim;          // n >= 2
    double curvature; // k <= 0

    SpaceForm(int n, double k) : dim(n), curvature(k) {
        if (n < 2) throw DomainError("SpaceForm: dim must be >= 2");
        if (!(k <= 0.0)) throw DomainError("SpaceForm: curvature must be <= 0");
    }

    bool hyperbolic() const { return curvature < 0.0; }
    double sqrt_abs_k() const;
};

// Area of the unit sphere S^{n-1} in R^n:  2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

// Mean curvature H_k(r) of the geodesic sphere of radius r:
// (n-1) sqrt|k| coth(sqrt|k| r) for k < 0, (n-1)/r for k = 0.
double mean_curvature(const SpaceForm& space, double r);

// (n-1)-volume of the geodesic sphere of radius R.
double sphere_area(const SpaceForm& space, double R);

// Volume of the geodesic ball of radius R (exact exponential/monomial closed form).
double ball_volume(const SpaceForm& space, double R);

// Poincare-ball coordinate dictionary (k < 0 only).
// Geodesic radius R  <->  Euclidean ball-model radius rho = tanh(sqrt|k| R / 2).
double geodesic_to_ball_radius(const SpaceForm& space, double R);
double ball_to_geodesic_radius(const SpaceForm& space, double rho);

// Conformal factor c(x) with g = c^2 * delta, as a function of |x|^2 (k < 0 only).
double conformal_factor(const SpaceForm& space, double rho_sq);

// Small dense-vector helpers shared by the modules working in model coordinates.
double dot(std::span<const double> a, std::span<const double> b);
double norm_sq(std::span<const double> a);
std::vector<double> normalized(std::span<const double> a);

} // namespace pricelab
