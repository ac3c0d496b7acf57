#include "pricelab/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pricelab {

namespace {

constexpr double kColinearTol = 1e-12;

int term_degree(const PolyTerm& t) {
    switch (t.basis) {
        case PolyBasis::Constant: return 0;
        case PolyBasis::Coordinate: return 1;
        case PolyBasis::Product:
        case PolyBasis::DiffSq: return 2;
        case PolyBasis::Axial: return t.degree;
    }
    return 0;
}

} // namespace

void zonal_polynomial(int degree, int dim, double t, double& value, double& derivative) {
    if (degree < 0) throw DomainError("zonal_polynomial: degree must be >= 0");
    if (dim < 2) throw DomainError("zonal_polynomial: dim must be >= 2");
    if (degree == 0) {
        value = 1.0;
        derivative = 0.0;
        return;
    }
    if (dim == 2) {
        // Chebyshev T_d: r^d T_d(cos theta) = Re (x1 + i x2)^d
        double p0 = 1.0, p1 = t, d0 = 0.0, d1 = 1.0;
        for (int m = 1; m < degree; ++m) {
            const double p2 = 2.0 * t * p1 - p0;
            const double d2 = 2.0 * p1 + 2.0 * t * d1 - d0;
            p0 = p1; p1 = p2;
            d0 = d1; d1 = d2;
        }
        value = p1;
        derivative = d1;
        return;
    }
    // Gegenbauer C_d^lambda with lambda = (n-2)/2
    const double lam = 0.5 * (dim - 2);
    double p0 = 1.0, p1 = 2.0 * lam * t, d0 = 0.0, d1 = 2.0 * lam;
    for (int m = 1; m < degree; ++m) {
        const double p2 = (2.0 * (m + lam) * t * p1 - (m + 2.0 * lam - 1.0) * p0) / (m + 1);
        const double d2 = (2.0 * (m + lam) * (p1 + t * d1) - (m + 2.0 * lam - 1.0) * d0) / (m + 1);
        p0 = p1; p1 = p2;
        d0 = d1; d1 = d2;
    }
    value = p1;
    derivative = d1;
}

namespace {

double poly_term_value(const PolyTerm& term, std::span<const double> x, int /*dim*/) {
    switch (term.basis) {
        case PolyBasis::Constant: return term.coefficient;
        case PolyBasis::Coordinate: return term.coefficient * x[term.i];
        case PolyBasis::Product: return term.coefficient * x[term.i] * x[term.j];
        case PolyBasis::DiffSq:
            return term.coefficient * (x[term.i] * x[term.i] - x[term.j] * x[term.j]);
        case PolyBasis::Axial: break;
    }
    const int d = term.degree;
    const int n = (int)x.size();
    const double r = std::sqrt(norm_sq(x));
    if (d == 0) return term.coefficient;
    if (r == 0.0) return 0.0;
    const double t = dot(x, term.axis) / r;
    double g, gp;
    zonal_polynomial(d, n, t, g, gp);
    return term.coefficient * std::pow(r, d) * g;
}

void poly_term_gradient(const PolyTerm& term, std::span<const double> x, std::span<double> out) {
    const int n = (int)x.size();
    switch (term.basis) {
        case PolyBasis::Constant:
            return;
        case PolyBasis::Coordinate:
            out[term.i] += term.coefficient;
            return;
        case PolyBasis::Product:
            out[term.i] += term.coefficient * x[term.j];
            out[term.j] += term.coefficient * x[term.i];
            return;
        case PolyBasis::DiffSq:
            out[term.i] += 2.0 * term.coefficient * x[term.i];
            out[term.j] -= 2.0 * term.coefficient * x[term.j];
            return;
        case PolyBasis::Axial:
            break;
    }
    const int d = term.degree;
    if (d == 0) return;
    const double r = std::sqrt(norm_sq(x));
    if (r < 1e-300) {
        if (d == 1) {
            // v_1 = 2 lambda <x, a> for n >= 3, <x, a> for n = 2
            const double c1 = (n == 2) ? 1.0 : (double)(n - 2);
            for (int i = 0; i < n; ++i) out[i] += term.coefficient * c1 * term.axis[i];
        }
        return; // gradient vanishes at the origin for d >= 2
    }
    const double t = dot(x, term.axis) / r;
    double g, gp;
    zonal_polynomial(d, n, t, g, gp);
    const double rpow = std::pow(r, d - 1);
    for (int i = 0; i < n; ++i) {
        const double xhat = x[i] / r;
        out[i] += term.coefficient * rpow * (d * g * xhat + gp * (term.axis[i] - t * xhat));
    }
}

} // namespace

HarmonicFunction HarmonicFunction::constant(double value, const SpaceForm& space) {
    HarmonicFunction f(Kind::Constant, space);
    f.value_ = value;
    f.spectrum_ = {{0, value * value * unit_sphere_area(space.dim)}};
    if (space.curvature != 0.0) f.spectrum_.clear();
    return f;
}

HarmonicFunction HarmonicFunction::polynomial(std::vector<PolyTerm> terms, const SpaceForm& space,
                                              const QuadratureSpec& spec) {
    if (space.curvature != 0.0 && space.dim != 2)
        throw DomainError("HarmonicFunction::polynomial: Euclidean polynomials pair with "
                          "curved spaces only in dimension 2");
    if (terms.empty()) throw DomainError("HarmonicFunction::polynomial: no terms");
    for (PolyTerm& t : terms) {
        if (t.basis == PolyBasis::Axial) {
            if (t.degree < 0) throw DomainError("polynomial: axial degree must be >= 0");
            if (t.degree > 16) throw DomainError("polynomial: axial degree capped at 16");
            if (t.axis.empty()) {
                t.axis.assign(space.dim, 0.0);
                t.axis[0] = 1.0;
            }
            if ((int)t.axis.size() != space.dim)
                throw DomainError("polynomial: axial axis dimension mismatch");
            t.axis = normalized(t.axis);
        } else {
            if (t.i < 0 || t.i >= space.dim || t.j < 0 || t.j >= space.dim)
                throw DomainError("polynomial: coordinate index out of range");
            if ((t.basis == PolyBasis::Product || t.basis == PolyBasis::DiffSq) && t.i == t.j)
                throw DomainError("polynomial: Product/DiffSq require distinct indices");
            t.degree = term_degree(t);
        }
        t.degree = term_degree(t);
    }

    HarmonicFunction f(Kind::Polynomial, space);
    f.terms_ = std::move(terms);

    if (space.curvature == 0.0) {
        // eps_d = int_{S_1} v_d^2, with v_d the degree-d part; degrees are orthogonal
        // on centered spheres, so these constants determine every sphere energy.
        std::map<int, std::vector<const PolyTerm*>> by_degree;
        for (const PolyTerm& t : f.terms_) by_degree[t.degree].push_back(&t);
        const SpaceForm unit_space(space.dim, 0.0);
        for (const auto& [deg, parts] : by_degree) {
            const PointFn g = [&](std::span<const double> x) {
                double v = 0.0;
                for (const PolyTerm* t : parts) v += poly_term_value(*t, x, space.dim);
                return v * v;
            };
            const Integral eps = sphere_integral(unit_space, 1.0, g, spec);
            f.spectrum_.push_back({deg, eps.value});
        }
    }
    return f;
}

HarmonicFunction HarmonicFunction::poisson(std::vector<PoissonAtom> atoms, const SpaceForm& space) {
    if (!space.hyperbolic())
        throw DomainError("HarmonicFunction::poisson: requires curvature < 0");
    if (atoms.empty()) throw DomainError("HarmonicFunction::poisson: no atoms");
    for (PoissonAtom& a : atoms) {
        if (!(a.weight > 0.0)) throw DomainError("poisson: atom weights must be > 0");
        if ((int)a.zeta.size() != space.dim)
            throw DomainError("poisson: zeta dimension mismatch");
        a.zeta = normalized(a.zeta);
    }
    HarmonicFunction f(Kind::Poisson, space);
    f.atoms_ = std::move(atoms);
    return f;
}

void HarmonicFunction::check_point(std::span<const double> x) const {
    if ((int)x.size() != space_.dim)
        throw DomainError("HarmonicFunction: point dimension mismatch");
    if (space_.hyperbolic() && norm_sq(x) >= 1.0)
        throw DomainError("HarmonicFunction: point outside the model ball");
}

double HarmonicFunction::poisson_atom_value(std::span<const double> x,
                                            const PoissonAtom& atom) const {
    const int n = space_.dim;
    double dist_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = x[i] - atom.zeta[i];
        dist_sq += d * d;
    }
    if (dist_sq == 0.0)
        throw SingularBoundaryError("Poisson kernel evaluated at its boundary atom");
    return std::pow((1.0 - norm_sq(x)) / dist_sq, n - 1);
}

double HarmonicFunction::evaluate(std::span<const double> x) const {
    check_point(x);
    switch (kind_) {
        case Kind::Constant:
            return value_;
        case Kind::Polynomial: {
            double v = 0.0;
            for (const PolyTerm& t : terms_) v += poly_term_value(t, x, space_.dim);
            return v;
        }
        case Kind::Poisson: {
            double v = 0.0;
            for (const PoissonAtom& a : atoms_) v += a.weight * poisson_atom_value(x, a);
            return v;
        }
    }
    return 0.0;
}

std::vector<double> HarmonicFunction::gradient(std::span<const double> x) const {
    check_point(x);
    const int n = space_.dim;
    std::vector<double> out(n, 0.0);
    switch (kind_) {
        case Kind::Constant:
            break;
        case Kind::Polynomial:
            for (const PolyTerm& t : terms_) poly_term_gradient(t, x, out);
            break;
        case Kind::Poisson: {
            // grad P = (n-1) P * (-2) [ x/(1-|x|^2) + (x - zeta)/|x - zeta|^2 ]
            const double r_sq = norm_sq(x);
            for (const PoissonAtom& a : atoms_) {
                const double p = poisson_atom_value(x, a);
                double dist_sq = 0.0;
                for (int i = 0; i < n; ++i) {
                    const double d = x[i] - a.zeta[i];
                    dist_sq += d * d;
                }
                const double cw = -2.0 * (n - 1) * a.weight * p;
                for (int i = 0; i < n; ++i)
                    out[i] += cw * (x[i] / (1.0 - r_sq) + (x[i] - a.zeta[i]) / dist_sq);
            }
            break;
        }
    }
    return out;
}

double HarmonicFunction::riemannian_grad_norm_sq(std::span<const double> x) const {
    const std::vector<double> grad = gradient(x);
    const double euclid = norm_sq(grad);
    if (!space_.hyperbolic()) return euclid;
    const double c = conformal_factor(space_, norm_sq(x));
    return euclid / (c * c);
}

double HarmonicFunction::harmonicity_residual(std::span<const double> x, double h) const {
    check_point(x);
    if (!(h > 0.0)) throw DomainError("harmonicity_residual: h must be > 0");
    const int n = space_.dim;

    // every stencil point must stay inside the model ball
    if (space_.hyperbolic()) {
        const double r = std::sqrt(norm_sq(x));
        if (r + h >= 1.0) throw DomainError("harmonicity_residual: stencil exits the model ball");
    }

    std::vector<double> pt(x.begin(), x.end());
    const double center = evaluate(pt);
    double lap = 0.0;
    std::vector<double> grad_fd(n, 0.0);
    for (int i = 0; i < n; ++i) {
        pt[i] = x[i] + h;
        const double fp = evaluate(pt);
        pt[i] = x[i] - h;
        const double fm = evaluate(pt);
        pt[i] = x[i];
        lap += (fp - 2.0 * center + fm) / (h * h);
        grad_fd[i] = (fp - fm) / (2.0 * h);
    }
    if (!space_.hyperbolic()) return std::abs(lap);

    // conformal metric g = c^2 delta:
    //   Delta_g f = c^{-2} [ Delta_e f + (n-2) <grad_e log c, grad_e f> ],
    // with grad log c = 2x/(1-|x|^2) known analytically from the model dictionary.
    const double r_sq = norm_sq(x);
    const double c = conformal_factor(space_, r_sq);
    double cross = 0.0;
    for (int i = 0; i < n; ++i) cross += 2.0 * x[i] / (1.0 - r_sq) * grad_fd[i];
    return std::abs((lap + (n - 2) * cross) / (c * c));
}

bool HarmonicFunction::is_constant() const {
    if (kind_ == Kind::Constant) return true;
    if (kind_ == Kind::Polynomial) {
        for (const PolyTerm& t : terms_)
            if (t.degree > 0 && t.coefficient != 0.0) return false;
        return true;
    }
    return false;
}

bool HarmonicFunction::is_positive() const {
    switch (kind_) {
        case Kind::Constant: return value_ > 0.0;
        case Kind::Poisson: return true; // positive weights, positive kernel
        case Kind::Polynomial: return false;
    }
    return false;
}

std::optional<std::vector<double>> HarmonicFunction::symmetry_axis() const {
    const int n = space_.dim;
    std::vector<double> axis;
    const auto compatible = [&](std::span<const double> a) {
        if (axis.empty()) {
            axis.assign(a.begin(), a.end());
            return true;
        }
        return std::abs(std::abs(dot(axis, a)) - 1.0) < kColinearTol;
    };
    switch (kind_) {
        case Kind::Constant: {
            std::vector<double> e1(n, 0.0);
            e1[0] = 1.0;
            return e1;
        }
        case Kind::Poisson:
            for (const PoissonAtom& a : atoms_)
                if (!compatible(a.zeta)) return std::nullopt;
            return axis;
        case Kind::Polynomial:
            for (const PolyTerm& t : terms_) {
                if (t.basis == PolyBasis::Constant) continue;
                if (t.basis == PolyBasis::Product || t.basis == PolyBasis::DiffSq)
                    return std::nullopt;
                if (t.basis == PolyBasis::Coordinate) {
                    std::vector<double> e(n, 0.0);
                    e[t.i] = 1.0;
                    if (!compatible(e)) return std::nullopt;
                } else if (!compatible(t.axis)) {
                    return std::nullopt;
                }
            }
            if (axis.empty()) { // constants only
                axis.assign(n, 0.0);
                axis[0] = 1.0;
            }
            return axis;
    }
    return std::nullopt;
}

const std::vector<SpectrumEntry>& HarmonicFunction::spectrum() const {
    if (space_.curvature != 0.0)
        throw DomainError("HarmonicFunction::spectrum: defined for Euclidean home spaces only");
    return spectrum_;
}

} // namespace pricelab
