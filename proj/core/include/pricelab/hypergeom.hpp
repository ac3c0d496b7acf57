#pragma once

#include <vector>

#include "pricelab/quadrature.hpp"
#include "pricelab/spaceform.hpp"

namespace pricelab {

// Terminating Gauss hypergeometric series 2F1(a, b, c; z) with a a nonpositive
// integer.  Throws ParameterConflictError if a Pochhammer factor of c vanishes
// before the series truncates.  Compensated summation throughout.
double hyp2f1_terminating(int a, double b, double c, double z);

// Q(R) = int_{S_R} P^2 dsigma for a single unit-weight Poisson kernel atom on the
// curvature -1 space, as the exponential sum  sum_{j=-(n-1)}^{n-1} alpha_{j+n-1} e^{2jR}.
// Coefficients are extracted in exact rational arithmetic (the alternating binomial
// expansion of sinh^{n-1} cancels catastrophically in floating point for n >= 5);
// the calibration constant c1 is applied last, in floating point.
struct QFormEvaluation {
    int dim = 3;
    double c1 = 1.0;
    std::vector<double> alpha; // exactly 2(n-1)+1 entries

    double eval(double R) const;
};

// Closed form  c1 * sinh^{n-1}(R) * 2F1(1-n, (n-1)/2, (5-3n)/2; e^{2R}) / e^{(n-1)R}.
// Terminating regime n >= 3 only.  Prefer QFormEvaluation::eval for large R.
double q_closed_form(int n, double R, double c1);

QFormEvaluation q_coefficients(int n, double c1);

// Q on the curvature-k' space (k' < 0): Q evaluated at sqrt|k'| R with the area
// element rescaled by |k'|^{-(n-1)/2}.
double rescaled_q(int n, double kprime, double R, double c1);

// int_0^R of rescaled_q: exact ball energy of the atom, used for far-grid exponent fits.
double q_ball_closed_form(int n, double kprime, double R, double c1);

// Calibrate c1 by anchoring the closed form to the quadrature value of Q(1) on the
// curvature -1 space.  The kernel normalization P(0, zeta) = 1 makes this the one
// free constant of the closed form.
double calibrate_c1(int n, const QuadratureSpec& spec);

} // namespace pricelab
