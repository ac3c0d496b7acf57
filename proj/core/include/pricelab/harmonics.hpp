#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pricelab/quadrature.hpp"
#include "pricelab/spaceform.hpp"

namespace pricelab {

struct PoissonAtom {
    double weight = 1.0;            // > 0
    std::vector<double> zeta;       // unit boundary direction
};

enum class PolyBasis { Constant, Coordinate, Product, DiffSq, Axial };

// One harmonic basis element of a Euclidean polynomial, scaled by `coefficient`:
//   Constant    1
//   Coordinate  x_i
//   Product     x_i x_j           (i != j)
//   DiffSq      x_i^2 - x_j^2     (i != j)
//   Axial       r^d G_d(<x,axis>/r), G_d the degree-d zonal polynomial
struct PolyTerm {
    PolyBasis basis = PolyBasis::Constant;
    int degree = 0;                 // set automatically except for Axial
    int i = 0, j = 0;
    std::vector<double> axis;       // Axial only; defaults to e_1
    double coefficient = 1.0;
};

struct SpectrumEntry {
    int degree;
    double epsilon;                 // eps_d = int_{S_1} v_d^2 dsigma, cached at construction
};

// Catalog of exactly-harmonic functions on the model spaces with analytic value and
// gradient.  Immutable after construction (including the cached sphere constants),
// so instances are safe to share across threads.
class HarmonicFunction {
public:
    enum class Kind { Constant, Polynomial, Poisson };

    static HarmonicFunction constant(double value, const SpaceForm& space);

    // Euclidean harmonic polynomial.  Requires curvature 0, or dim 2 on a hyperbolic
    // space (conformal invariance makes plane-harmonic = hyperbolic-harmonic there).
    static HarmonicFunction polynomial(std::vector<PolyTerm> terms, const SpaceForm& space,
                                       const QuadratureSpec& spec = {});

    // Finite positive combination of ball-model Poisson kernel atoms; curvature < 0.
    static HarmonicFunction poisson(std::vector<PoissonAtom> atoms, const SpaceForm& space);

    double evaluate(std::span<const double> x) const;
    std::vector<double> gradient(std::span<const double> x) const; // coordinate components
    double riemannian_grad_norm_sq(std::span<const double> x) const;

    // Finite-difference Laplace-Beltrami residual at x; O(h^2) for catalog members.
    double harmonicity_residual(std::span<const double> x, double h = 1e-3) const;

    Kind kind() const { return kind_; }
    const SpaceForm& space() const { return space_; }
    bool is_constant() const;
    bool is_positive() const;

    // Axis of rotational invariance when the function has one.
    std::optional<std::vector<double>> symmetry_axis() const;

    // Degree spectrum with cached sphere constants; Euclidean polynomials only.
    const std::vector<SpectrumEntry>& spectrum() const;

    const std::vector<PoissonAtom>& atoms() const { return atoms_; }
    const std::vector<PolyTerm>& terms() const { return terms_; }
    double constant_value() const { return value_; }

private:
    HarmonicFunction(Kind kind, SpaceForm space) : kind_(kind), space_(space) {}

    void check_point(std::span<const double> x) const;
    double poisson_atom_value(std::span<const double> x, const PoissonAtom& atom) const;

    Kind kind_;
    SpaceForm space_;
    double value_ = 0.0;
    std::vector<PolyTerm> terms_;
    std::vector<PoissonAtom> atoms_;
    std::vector<SpectrumEntry> spectrum_;
};

// Zonal (axially symmetric) harmonic polynomial machinery: value and derivative of
// the degree-d Gegenbauer-type polynomial G_d at t, for dimension n (Chebyshev when
// n = 2), from the three-term recurrence.
void zonal_polynomial(int degree, int dim, double t, double& value, double& derivative);

} // namespace pricelab
