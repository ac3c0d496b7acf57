#include "pricelab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace pricelab {

void QuadratureSpec::validate() const {
    if (angular_order < 4) throw DomainError("QuadratureSpec: angular_order must be >= 4");
    if (radial_order < 8) throw DomainError("QuadratureSpec: radial_order must be >= 8");
    if (!(target_rel_tol > 0.0 && target_rel_tol <= 1e-2))
        throw DomainError("QuadratureSpec: target_rel_tol must lie in (0, 1e-2]");
    if (max_refinements < 1) throw DomainError("QuadratureSpec: max_refinements must be >= 1");
}

namespace {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton iteration on the Legendre recurrence.
GaussRule make_gauss_rule(int q) {
    GaussRule rule;
    rule.nodes.resize(q);
    rule.weights.resize(q);
    for (int i = 0; i < (q + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int m = 2; m <= q; ++m) {
                const double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[q - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[q - 1 - i] = w;
    }
    return rule;
}

const GaussRule& gauss_rule(int q) {
    static std::mutex mtx;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, make_gauss_rule(q)).first;
    return it->second;
}

using Fn1D = std::function<double(double)>;

double gauss_segment(const Fn1D& h, double lo, double hi, int q) {
    const GaussRule& rule = gauss_rule(q);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0, comp = 0.0; // Kahan
    for (int i = 0; i < q; ++i) {
        const double term = rule.weights[i] * h(mid + half * rule.nodes[i]);
        const double y = term - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return acc * half;
}

struct Panel {
    double lo, hi;
    double value; // order-2q estimate
    double err;   // |I_2q - I_q|
};

Panel eval_panel(const Fn1D& h, double lo, double hi, int q) {
    Panel p;
    p.lo = lo;
    p.hi = hi;
    const double coarse = gauss_segment(h, lo, hi, q);
    p.value = gauss_segment(h, lo, hi, 2 * q);
    p.err = std::abs(p.value - coarse);
    return p;
}

// Adaptive composite rule on [lo, hi]: order-doubling per panel, worst panels split
// until the summed error estimate meets the relative target.
Integral adaptive_1d(const Fn1D& h, double lo, double hi, const QuadratureSpec& spec,
                     int initial_panels) {
    constexpr int kMaxPanels = 4096;
    std::vector<Panel> panels;
    panels.reserve(64);
    const double width = (hi - lo) / initial_panels;
    for (int i = 0; i < initial_panels; ++i)
        panels.push_back(eval_panel(h, lo + i * width, lo + (i + 1) * width, spec.angular_order));

    for (int round = 0; round <= spec.max_refinements; ++round) {
        double total = 0.0, err = 0.0, scale = 0.0;
        for (const Panel& p : panels) {
            total += p.value;
            err += p.err;
            scale = std::max(scale, std::abs(p.value));
        }
        const double target = spec.target_rel_tol * std::max({std::abs(total), scale, 1e-300});
        if (err <= target) return {total, err};
        if (round == spec.max_refinements || (int)panels.size() >= kMaxPanels)
            throw QuadratureError("adaptive quadrature: refinement budget exhausted", total, err);

        // split every panel that holds more than its share of the error budget
        const double share = target / (2.0 * (double)panels.size());
        std::vector<Panel> next;
        next.reserve(panels.size() * 2);
        bool split_any = false;
        double worst = 0.0;
        for (const Panel& p : panels) worst = std::max(worst, p.err);
        for (const Panel& p : panels) {
            const bool split = p.err > share || (!split_any && p.err == worst && worst > 0.0);
            if (split && (int)next.size() + 2 <= kMaxPanels) {
                const double mid = 0.5 * (p.lo + p.hi);
                next.push_back(eval_panel(h, p.lo, mid, spec.angular_order));
                next.push_back(eval_panel(h, mid, p.hi, spec.angular_order));
                split_any = true;
            } else {
                next.push_back(p);
            }
        }
        panels = std::move(next);
    }
    // not reached
    return {0.0, 0.0};
}

// Slice of the product rule at fixed first polar angle: the remaining inner polar
// angles at Gauss-Legendre order q, the azimuth on a uniform m-point trapezoid
// (spectrally accurate for periodic smooth integrands).
double inner_slice(const PointFn& gu, std::vector<double>& u, int n, double prefix, int level,
                   int q, int m) {
    if (level == n - 2) { // azimuth
        double acc = 0.0;
        const double w = 2.0 * M_PI / m;
        for (int i = 0; i < m; ++i) {
            const double phi = w * i;
            u[n - 2] = prefix * std::cos(phi);
            u[n - 1] = prefix * std::sin(phi);
            acc += gu(u);
        }
        return acc * w;
    }
    const GaussRule& rule = gauss_rule(q);
    const int sin_pow = n - 2 - level;
    double acc = 0.0;
    for (int i = 0; i < q; ++i) {
        const double theta = 0.5 * M_PI * (1.0 + rule.nodes[i]);
        const double s = std::sin(theta);
        u[level] = prefix * std::cos(theta);
        acc += rule.weights[i] * std::pow(s, sin_pow) *
               inner_slice(gu, u, n, prefix * s, level + 1, q, m);
    }
    return acc * 0.5 * M_PI;
}

// Full product rule: the first polar angle is integrated with the adaptive panel
// rule (splitting toward any peak), the inner angles and the azimuth at fixed
// orders that are doubled between rounds until two consecutive rounds agree.
Integral full_sphere_unit_integral(const PointFn& gu, int n, const QuadratureSpec& spec) {
    if (n == 2) { // the circle: azimuth trapezoid with doubling
        std::vector<double> u(2);
        int m = std::max(8, 2 * spec.angular_order);
        double lo = inner_slice(gu, u, 2, 1.0, 0, spec.angular_order, m);
        double err = std::abs(lo);
        for (int round = 0; round < spec.max_refinements && m <= (1 << 16); ++round) {
            m *= 2;
            const double hi = inner_slice(gu, u, 2, 1.0, 0, spec.angular_order, m);
            err = std::abs(hi - lo);
            if (err <= spec.target_rel_tol * std::max(std::abs(hi), 1e-300)) return {hi, err};
            lo = hi;
        }
        throw QuadratureError("sphere quadrature: azimuth refinement exhausted", lo, err);
    }

    constexpr int kMaxInnerOrder = 128;
    constexpr int kMaxAzimuth = 4096;
    // the first round runs at halved inner orders; round 1 reaches the nominal ones,
    // so smooth integrands converge after one doubling comparison
    int q = std::max(6, spec.angular_order / 2);
    int m = std::max(8, spec.angular_order);
    double prev = 0.0;
    double prev_polar_err = 0.0;
    for (int round = 0; round <= spec.max_refinements; ++round) {
        std::vector<double> u(n, 0.0);
        const Fn1D h = [&](double theta1) {
            const double s = std::sin(theta1);
            u[0] = std::cos(theta1);
            return std::pow(s, n - 2) * inner_slice(gu, u, n, s, 1, q, m);
        };
        const Integral polar = adaptive_1d(h, 0.0, M_PI, spec, 8);
        if (round > 0) {
            const double err = std::abs(polar.value - prev) + polar.err_est;
            if (err <= spec.target_rel_tol * std::max(std::abs(polar.value), 1e-300))
                return {polar.value, err};
        }
        prev = polar.value;
        prev_polar_err = polar.err_est;
        if (2 * m > kMaxAzimuth || (n > 3 && 2 * q > kMaxInnerOrder))
            throw QuadratureError("sphere quadrature: inner-order escalation exhausted", prev,
                                  std::abs(prev));
        q *= 2;
        m *= 2;
    }
    throw QuadratureError("sphere quadrature: refinement rounds exhausted", prev, prev_polar_err);
}

// Unit vector orthogonal to a (n >= 2), chosen deterministically.
std::vector<double> orthogonal_unit(std::span<const double> a) {
    const int n = (int)a.size();
    int imin = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(a[i]) < std::abs(a[imin])) imin = i;
    std::vector<double> b(n, 0.0);
    b[imin] = 1.0;
    const double proj = a[imin];
    for (int i = 0; i < n; ++i) b[i] -= proj * a[i];
    return normalized(b);
}

struct SphereGeometry {
    double rho;   // Euclidean radius of the coordinate sphere
    double scale; // area element scale: rho^{n-1} (k=0) or (sinh(aR)/a)^{n-1} (k<0)
};

SphereGeometry sphere_geometry(const SpaceForm& space, double R) {
    const int n = space.dim;
    if (space.curvature == 0.0) return {R, std::pow(R, n - 1)};
    const double a = space.sqrt_abs_k();
    const double rho = geodesic_to_ball_radius(space, R);
    return {rho, std::pow(std::sinh(a * R) / a, n - 1)};
}

} // namespace

Integral sphere_integral(const SpaceForm& space, double R, const PointFn& g,
                         const QuadratureSpec& spec,
                         const std::optional<std::vector<double>>& sym_axis) {
    spec.validate();
    if (!(R > 0.0)) throw DomainError("sphere_integral: R must be > 0");
    const int n = space.dim;
    const auto geo = sphere_geometry(space, R);

    if (sym_axis) {
        if ((int)sym_axis->size() != n)
            throw DomainError("sphere_integral: sym_axis dimension mismatch");
        const std::vector<double> axis = normalized(*sym_axis);
        const std::vector<double> perp = orthogonal_unit(axis);
        std::vector<double> point(n);
        const int sin_pow = n - 2;
        const Fn1D h = [&](double theta) {
            const double c = std::cos(theta), s = std::sin(theta);
            for (int i = 0; i < n; ++i) point[i] = geo.rho * (c * axis[i] + s * perp[i]);
            return g(point) * std::pow(std::sin(theta), sin_pow);
        };
        Integral polar = adaptive_1d(h, 0.0, M_PI, spec, 8);
        const double shell = unit_sphere_area(n - 1) * geo.scale;
        return {polar.value * shell, polar.err_est * std::abs(shell)};
    }

    std::vector<double> point(n);
    const PointFn gu = [&](std::span<const double> u) {
        for (int i = 0; i < n; ++i) point[i] = geo.rho * u[i];
        return g(point);
    };
    Integral unit = full_sphere_unit_integral(gu, n, spec);
    return {unit.value * geo.scale, unit.err_est * geo.scale};
}

namespace {

// Shared radial machinery: integrates node-weighted sphere values of g over the
// segment (lo, hi], with order doubling in the radial rule.  `weights` maps the
// radius to any number of extra multipliers (all accumulated in one pass).
struct SegmentSums {
    std::vector<double> value; // one per weight function
    std::vector<double> err;
};

SegmentSums radial_segment(const SpaceForm& space, const PointFn& g, const QuadratureSpec& spec,
                           const std::optional<std::vector<double>>& sym_axis, double lo, double hi,
                           const std::vector<std::function<double(double)>>& weights) {
    const std::size_t k = weights.size();
    SegmentSums out;
    out.value.assign(k, 0.0);
    out.err.assign(k, 0.0);

    const double panel_len = 0.5;
    const int npanels = std::max(1, (int)std::ceil((hi - lo) / panel_len));
    const double step = (hi - lo) / npanels;

    for (int p = 0; p < npanels; ++p) {
        const double a = lo + p * step;
        const double b = a + step;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);

        std::vector<double> coarse(k, 0.0), fine(k, 0.0), sphere_err(k, 0.0);
        for (int pass = 0; pass < 2; ++pass) {
            const int q = (pass == 0) ? spec.radial_order : 2 * spec.radial_order;
            const GaussRule& rule = gauss_rule(q);
            std::vector<double>& acc = (pass == 0) ? coarse : fine;
            for (int i = 0; i < q; ++i) {
                const double t = mid + half * rule.nodes[i];
                const Integral s = sphere_integral(space, t, g, spec, sym_axis);
                for (std::size_t w = 0; w < k; ++w) {
                    const double mult = weights[w](t) * rule.weights[i] * half;
                    acc[w] += mult * s.value;
                    if (pass == 1) sphere_err[w] += std::abs(mult) * s.err_est;
                }
            }
        }
        for (std::size_t w = 0; w < k; ++w) {
            out.value[w] += fine[w];
            out.err[w] += std::abs(fine[w] - coarse[w]) + sphere_err[w];
        }
    }
    return out;
}

} // namespace

CumulativeProfile cumulative_profile(const SpaceForm& space, std::span<const double> r_grid,
                                     const PointFn& g, const QuadratureSpec& spec,
                                     const std::optional<std::vector<double>>& sym_axis,
                                     const std::function<double(double)>& radial_weight) {
    spec.validate();
    if (r_grid.empty()) throw DomainError("cumulative_profile: empty grid");
    double prev = 0.0;
    for (double r : r_grid) {
        if (!(r > prev)) throw DomainError("cumulative_profile: grid must be positive and strictly increasing");
        prev = r;
    }

    CumulativeProfile out;
    out.running.reserve(r_grid.size());
    out.iterated.reserve(r_grid.size());
    if (radial_weight) out.weighted.reserve(r_grid.size());

    Integral running{0.0, 0.0}, iterated{0.0, 0.0}, weighted{0.0, 0.0};
    double lo = 0.0;
    for (double hi : r_grid) {
        std::vector<std::function<double(double)>> weights;
        weights.emplace_back([](double) { return 1.0; });
        weights.emplace_back([hi](double t) { return hi - t; }); // Fubini tail for the iterated pass
        if (radial_weight) weights.emplace_back(radial_weight);

        const SegmentSums seg = radial_segment(space, g, spec, sym_axis, lo, hi, weights);

        iterated.value += running.value * (hi - lo) + seg.value[1];
        iterated.err_est += running.err_est * (hi - lo) + seg.err[1];
        running.value += seg.value[0];
        running.err_est += seg.err[0];
        if (radial_weight) {
            weighted.value += seg.value[2];
            weighted.err_est += seg.err[2];
        }

        out.running.push_back(running);
        out.iterated.push_back(iterated);
        if (radial_weight) out.weighted.push_back(weighted);
        lo = hi;
    }
    return out;
}

Integral ball_integral(const SpaceForm& space, double R, const PointFn& g,
                       const QuadratureSpec& spec,
                       const std::optional<std::vector<double>>& sym_axis) {
    if (!(R > 0.0)) throw DomainError("ball_integral: R must be > 0");
    const double grid[1] = {R};
    return cumulative_profile(space, grid, g, spec, sym_axis).running.front();
}

} // namespace pricelab
