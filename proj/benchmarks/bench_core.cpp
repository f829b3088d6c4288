#include <benchmark/benchmark.h>

#include "starsurf/implicit.hpp"
#include "starsurf/surface.hpp"
#include "starsurf/topology.hpp"

using namespace starsurf;

namespace {

ProductSurface type1_surface() {
    return ProductSurface::build(named_circle(CirclePreset::A0),
                                 named_circle(CirclePreset::B1), Side::left_times_right);
}

void BM_HamiltonProductExact(benchmark::State& state) {
    SplitMix64 rng(1);
    QuatR a{rng.small_rat(20), rng.small_rat(20), rng.small_rat(20), rng.small_rat(20)};
    QuatR b{rng.small_rat(20), rng.small_rat(20), rng.small_rat(20), rng.small_rat(20)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(hamilton(a, b));
    }
}
BENCHMARK(BM_HamiltonProductExact);

void BM_SurfaceEvalFloat(benchmark::State& state) {
    ProductSurface s = type1_surface();
    double a = 0.3, b = 1.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.eval_angles(a, b));
        a += 1e-4;
        b += 2e-4;
    }
}
BENCHMARK(BM_SurfaceEvalFloat);

void BM_OnSphereCertificate(benchmark::State& state) {
    ProductSurface s = type1_surface();
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.on_sphere_certificate());
    }
}
BENCHMARK(BM_OnSphereCertificate);

void BM_QuarticKernel(benchmark::State& state) {
    // degree-4 certification of the central projection (35-column kernel)
    ProductSurface s = type1_surface();
    ProjectionSpec central;
    central.kind = ProjectionSpec::Kind::central;
    for (auto _ : state) {
        benchmark::DoNotOptimize(certify_degree(s, central, 4, kDefaultSeed));
    }
}
BENCHMARK(BM_QuarticKernel)->Unit(benchmark::kMillisecond);

void BM_LinkingNumber(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    PolylineCurve c1, c2;
    c1.closed = c2.closed = true;
    for (int i = 0; i < n; ++i) {
        double t = 6.283185307179586 * i / n;
        c1.pts.push_back({std::cos(t), std::sin(t), 0.0});
        c2.pts.push_back({1 + std::cos(t), 0.0, std::sin(t)});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(linking_number(c1, c2));
    }
}
BENCHMARK(BM_LinkingNumber)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
