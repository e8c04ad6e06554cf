#include "desconf/enumeration.hpp"
#include "desconf/twoblock.hpp"

#include <benchmark/benchmark.h>

using namespace desconf;

namespace {

ProjectiveSpace pg(int n, unsigned q) { return ProjectiveSpace(make_shared_field(FieldSpec::for_order(q)), n); }

void BM_FieldMultiply(benchmark::State& state) {
    const Field f = make_field(FieldSpec::for_order(static_cast<unsigned>(state.range(0))));
    const auto xs = f.elements();
    Elem acc = kOne;
    for (auto _ : state) {
        for (Elem x : xs) acc = f.add(f.mul(acc, x), kOne);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(xs.size()));
}
BENCHMARK(BM_FieldMultiply)->Arg(4)->Arg(9)->Arg(16);

void BM_MeetOfPlanes(benchmark::State& state) {
    const auto s = pg(3, static_cast<unsigned>(state.range(0)));
    const auto planes = s.hyperplanes();
    std::size_t i = 0;
    for (auto _ : state) {
        auto m = meet(planes[i % planes.size()], planes[(i + 1) % planes.size()]);
        benchmark::DoNotOptimize(m);
        ++i;
    }
}
BENCHMARK(BM_MeetOfPlanes)->Arg(3)->Arg(5);

void BM_PerspectiveConfig(benchmark::State& state) {
    const auto s = pg(2, 5);
    const Point v = s.parse_point("0,0,1");
    const Triangle t1{{s.parse_point("1,0,1"), s.parse_point("0,1,1"), s.parse_point("1,1,1")}};
    const Triangle t2{{s.parse_point("2,0,1"), s.parse_point("0,3,1"), s.parse_point("4,4,1")}};
    for (auto _ : state) benchmark::DoNotOptimize(perspective_config(s, v, t1, t2));
}
BENCHMARK(BM_PerspectiveConfig);

void BM_PlanarGlobalCensus(benchmark::State& state) {
    const auto plane = pg(2, static_cast<unsigned>(state.range(0)));
    OracleOptions o;
    o.jobs = 1;
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_planar_configs(plane, std::nullopt, o).count);
}
BENCHMARK(BM_PlanarGlobalCensus)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PlanarThroughPointCensus(benchmark::State& state) {
    const auto plane = pg(2, 5);
    OracleOptions o;
    o.jobs = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_planar_configs(plane, plane.point(0), o).count);
}
BENCHMARK(BM_PlanarThroughPointCensus)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SpatialThroughPointCensus(benchmark::State& state) {
    const auto space = pg(3, 3);
    OracleOptions o;
    o.jobs = 1;
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_spatial_configs(space, space.point(0), o).count);
}
BENCHMARK(BM_SpatialThroughPointCensus)->Unit(benchmark::kMillisecond);

void BM_CompressorScan(benchmark::State& state) {
    const auto s = pg(3, static_cast<unsigned>(state.range(0)));
    const AffineChart chart(s);
    const auto pts = chart.points();
    OracleOptions o;
    o.jobs = 1;
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_compressors(chart, pts[0], pts[1], o).count);
}
BENCHMARK(BM_CompressorScan)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_TwoBlockScan(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(classify_two_blocks(1).other);
}
BENCHMARK(BM_TwoBlockScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
