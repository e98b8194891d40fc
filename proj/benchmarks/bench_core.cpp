#include <benchmark/benchmark.h>

#include "critnet/analysis.hpp"
#include "critnet/evolution.hpp"
#include "critnet/glauber.hpp"

using namespace critnet;

namespace {

const SynapticWeights kWeights{12.0, 10.0, 8.0, 2.0};

void BM_ReducedRhs(benchmark::State& state) {
    ActivityPoint p{0.2, -0.1};
    for (auto _ : state) {
        Velocity v = reduced_rhs(p, kWeights, 1.0);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_ReducedRhs);

void BM_RegulatedRk4Step(benchmark::State& state) {
    RegulationConfig config;
    config.regulate_wee = true;
    config.regulate_wie = true;
    ExtendedState x = make_initial_state(0.2, -0.1, 12.0, 8.0);
    StateVec y = to_vec(x);
    auto rhs = [&](const StateVec& v) { return regulated_rhs(from_vec(v, 0.0), config); };
    for (auto _ : state) {
        y = rk4_step(rhs, y, 0.01);
        benchmark::DoNotOptimize(y);
    }
}
BENCHMARK(BM_RegulatedRk4Step);

void BM_GlauberStep(benchmark::State& state) {
    GlauberConfig config;
    config.n = static_cast<int>(state.range(0));
    config.params.variant = Variant::Full;
    config.params.weights = kWeights;
    config.params.thresholds = {1.0, 3.0};
    GlauberRng rng(1);
    BinaryNetworkState net = initial_network_state(config, rng);
    for (auto _ : state) {
        glauber_step(net, config, rng);
        benchmark::DoNotOptimize(net.sum_e);
    }
}
BENCHMARK(BM_GlauberStep)->Arg(70)->Arg(2000);

void BM_FindFixedPoints(benchmark::State& state) {
    SystemParams params;
    params.variant = Variant::Reduced;
    params.weights = {15.0, 10.0, 8.0, 2.0};
    for (auto _ : state) {
        auto fps = find_fixed_points(params);
        benchmark::DoNotOptimize(fps);
    }
}
BENCHMARK(BM_FindFixedPoints);

void BM_DetectAttractors(benchmark::State& state) {
    SystemParams params;
    params.variant = Variant::Reduced;
    params.weights = {12.0, 10.0, 8.0, 2.0};
    DetectOptions opts;
    opts.t_transient = 200.0;
    opts.t_measure = 200.0;
    for (auto _ : state) {
        auto report = detect_attractors(params, opts);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_DetectAttractors);

} // namespace

BENCHMARK_MAIN();
