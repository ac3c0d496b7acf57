#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "pricelab/growth.hpp"
#include "pricelab/hypergeom.hpp"

using namespace pricelab;

namespace {

const QuadratureSpec kSpec;

HarmonicFunction kernel_atom(int n) {
    std::vector<double> zeta(n, 0.0);
    zeta[0] = 1.0;
    return HarmonicFunction::poisson({{1.0, zeta}}, SpaceForm(n, -1.0));
}

void BM_sphere_integral_axial(benchmark::State& state) {
    const int n = (int)state.range(0);
    const double R = 0.1 * state.range(1);
    const SpaceForm space(n, -1.0);
    const HarmonicFunction atom = kernel_atom(n);
    const PointFn p_sq = [&](std::span<const double> x) {
        const double v = atom.evaluate(x);
        return v * v;
    };
    const auto axis = atom.symmetry_axis();
    for (auto _ : state) {
        benchmark::DoNotOptimize(sphere_integral(space, R, p_sq, kSpec, axis).value);
    }
}
BENCHMARK(BM_sphere_integral_axial)->Args({3, 10})->Args({3, 60})->Args({4, 30});

void BM_sphere_integral_full(benchmark::State& state) {
    const int n = (int)state.range(0);
    const SpaceForm space(n, -1.0);
    const HarmonicFunction atom = kernel_atom(n);
    const PointFn p_sq = [&](std::span<const double> x) {
        const double v = atom.evaluate(x);
        return v * v;
    };
    for (auto _ : state) {
        benchmark::DoNotOptimize(sphere_integral(space, 1.0, p_sq, kSpec).value);
    }
}
BENCHMARK(BM_sphere_integral_full)->Arg(3)->Arg(4);

void BM_growth_profile_polynomial(benchmark::State& state) {
    const SpaceForm e3(3, 0.0);
    const HarmonicFunction f = HarmonicFunction::polynomial(
        {{PolyBasis::Constant, 0, 0, 0, {}, 1.0}, {PolyBasis::Coordinate, 0, 0, 0, {}, 1.0}}, e3);
    const std::vector<double> grid{0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(growth_profile(f, e3, grid, kSpec).back().mu);
    }
}
BENCHMARK(BM_growth_profile_polynomial);

void BM_growth_profile_kernel_pair(benchmark::State& state) {
    const SpaceForm h3(3, -1.0);
    const HarmonicFunction pair =
        HarmonicFunction::poisson({{1.0, {1, 0, 0}}, {1.0, {-1, 0, 0}}}, h3);
    const std::vector<double> grid{1.0, 2.0, 3.0, 4.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(growth_profile(pair, h3, grid, kSpec).back().mu);
    }
}
BENCHMARK(BM_growth_profile_kernel_pair);

void BM_q_closed_form(benchmark::State& state) {
    const int n = (int)state.range(0);
    double R = 0.25;
    for (auto _ : state) {
        benchmark::DoNotOptimize(q_closed_form(n, R, 1.0));
        R = (R > 9.0) ? 0.25 : R + 1e-3;
    }
}
BENCHMARK(BM_q_closed_form)->Arg(3)->Arg(6);

void BM_q_coefficients(benchmark::State& state) {
    const int n = (int)state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(q_coefficients(n, 1.0).alpha.back());
    }
}
BENCHMARK(BM_q_coefficients)->Arg(3)->Arg(8);

} // namespace

BENCHMARK_MAIN();
