#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pricelab/spaceform.hpp"

namespace pricelab {

// Deterministic product-rule quadrature over geodesic spheres and balls of the
// model spaces.  Geodesic spheres in the hyperbolic ball model are integrated as
// Euclidean spheres of radius geodesic_to_ball_radius(R) with the area element
// scaled by the conformal factor to the (n-1)-th power.
struct QuadratureSpec {
    int angular_order = 24;      // Gauss-Legendre points per polar angle / panel
    int radial_order = 12;       // Gauss-Legendre points per radial panel
    double target_rel_tol = 1e-9;
    int max_refinements = 24;    // refinement rounds before giving up

    void validate() const;
};

struct Integral {
    double value = 0.0;
    double err_est = 0.0;
};

using PointFn = std::function<double(std::span<const double>)>;

// Integral of g over the geodesic sphere S_R(0); err_est comes from order doubling.
// `sym_axis`, when set, promises that g is invariant under rotations about that axis:
// the integral then collapses to a single adaptively refined polar-angle rule, which
// also resolves the sharp near-boundary peaks of kernel integrands.
Integral sphere_integral(const SpaceForm& space, double R, const PointFn& g,
                         const QuadratureSpec& spec,
                         const std::optional<std::vector<double>>& sym_axis = std::nullopt);

// Integral of g over the geodesic ball B_R(0): composite Gauss-Legendre panels in the
// geodesic radius composed with sphere_integral.
Integral ball_integral(const SpaceForm& space, double R, const PointFn& g,
                       const QuadratureSpec& spec,
                       const std::optional<std::vector<double>>& sym_axis = std::nullopt);

struct CumulativeProfile {
    std::vector<Integral> running;   // entry i:  integral of g over B_{r_i}
    std::vector<Integral> iterated;  // entry i:  int_0^{r_i} ( int_{B_r} g ) dr
    std::vector<Integral> weighted;  // entry i:  int_{B_{r_i}} w(r) g  (present iff weight given)
};

// Running ball integrals over a strictly increasing positive grid.  The iterated
// column is the second cumulative pass over the grid; each segment contribution is
// evaluated as an (R - t)-weighted radial integral so it carries no grid-resolution
// error.  All three columns share the same sphere evaluations.
CumulativeProfile cumulative_profile(const SpaceForm& space, std::span<const double> r_grid,
                                     const PointFn& g, const QuadratureSpec& spec,
                                     const std::optional<std::vector<double>>& sym_axis = std::nullopt,
                                     const std::function<double(double)>& radial_weight = {});

} // namespace pricelab
