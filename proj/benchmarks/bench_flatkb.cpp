#include <benchmark/benchmark.h>

#include "flatkb/assembly.hpp"

#include <numbers>

using namespace flatkb;

namespace {

constexpr double pi = std::numbers::pi;

const Assembly& klein()
{
    static const Assembly a = build_flat_klein(KleinParams{});
    return a;
}

} // namespace

static void BM_GenerateParametersFloat(benchmark::State& state)
{
    const TubeFrame tf = make_tube_frame<double>(FrameKind::VEE, 6, 4.0, pi / 3, pi, 3 * pi / 2);
    for (auto _ : state) benchmark::DoNotOptimize(generate_parameters<double>(tf, 3, 3.1, 2.5));
}
BENCHMARK(BM_GenerateParametersFloat);

static void BM_GenerateParametersCertified(benchmark::State& state)
{
    const ITubeFrame tf = make_tube_frame<Interval>(FrameKind::VEE, 6, Interval(4.0), ia_pi() / Interval(3.0), ia_pi(),
                                                    Angle::pi_frac(3, 2).as<Interval>());
    for (auto _ : state) benchmark::DoNotOptimize(generate_parameters<Interval>(tf, 3, ia_from_value(3.1), ia_from_value(2.5)));
}
BENCHMARK(BM_GenerateParametersCertified);

static void BM_CofactorsInterval(benchmark::State& state)
{
    IMat34 M;
    for (size_t r = 0; r < 3; ++r)
        for (size_t c = 0; c < 4; ++c) M[r][c] = ia_from_value(0.1 * static_cast<double>(r * 4 + c + 1) + (r == c));
    for (auto _ : state) benchmark::DoNotOptimize(cofactors_3x4(M));
}
BENCHMARK(BM_CofactorsInterval);

static void BM_LocalInjectivity(benchmark::State& state)
{
    const CWMesh& m = klein().glued.mesh;
    for (auto _ : state)
        for (int v = 0; v < m.num_vertices(); ++v) benchmark::DoNotOptimize(certify_local_injectivity(m, v));
}
BENCHMARK(BM_LocalInjectivity)->Unit(benchmark::kMillisecond);

static void BM_MergeCoplanar(benchmark::State& state)
{
    const CWMesh& m = klein().glued.mesh;
    for (auto _ : state) benchmark::DoNotOptimize(merge_coplanar(m));
}
BENCHMARK(BM_MergeCoplanar)->Unit(benchmark::kMillisecond);

static void BM_SelfIntersections(benchmark::State& state)
{
    const CWMesh& m = klein().merged;
    for (auto _ : state) benchmark::DoNotOptimize(self_intersections(m));
}
BENCHMARK(BM_SelfIntersections)->Unit(benchmark::kMillisecond);

static void BM_BuildKlein(benchmark::State& state)
{
    AssemblyOptions opt;
    opt.certified = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(build_flat_klein(KleinParams{}, opt));
}
BENCHMARK(BM_BuildKlein)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
