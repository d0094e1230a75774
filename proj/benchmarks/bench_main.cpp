#include "dnstime/evaluate.hpp"
#include "dnstime/histogram.hpp"
#include "dnstime/knn.hpp"
#include "dnstime/profiles.hpp"
#include "dnstime/random_forest.hpp"
#include "dnstime/rng.hpp"
#include "dnstime/simulator.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace dnstime;

std::vector<std::int64_t> uniform_samples(std::size_t n, std::int64_t lo, std::int64_t hi) {
    Rng rng(42);
    std::vector<std::int64_t> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) samples.push_back(rng.uniform_int(lo, hi));
    return samples;
}

std::vector<TrainPoint> attack_vs_cache_points(std::size_t per_class) {
    Rng rng(7);
    std::vector<TrainPoint> points;
    points.reserve(per_class * 2);
    for (std::size_t i = 0; i < per_class; ++i) {
        points.push_back({rng.uniform_int(925, 1075), 1}); // cache band
        points.push_back({rng.uniform_int(1, 20000), 0});  // sprayed attack
    }
    return points;
}

void BM_BuildHistogram(benchmark::State& state) {
    const auto samples = uniform_samples(static_cast<std::size_t>(state.range(0)), 0, 999'999);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_histogram(samples, Binning::coarse()));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildHistogram)->Arg(10'000)->Arg(100'000);

void BM_KnnPredict(benchmark::State& state) {
    const auto points = attack_vs_cache_points(static_cast<std::size_t>(state.range(0)) / 2);
    const KnnModel model = KnnModel::fit(points, 5);
    Rng rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.predict(rng.uniform_int(1, 20000)));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_KnnPredict)->Arg(10'000)->Arg(100'000);

void BM_ForestFit(benchmark::State& state) {
    const auto points = attack_vs_cache_points(static_cast<std::size_t>(state.range(0)) / 2);
    ForestParams params;
    params.tree_count = 10;
    params.max_depth = 8;
    params.seed = 11;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ForestModel::fit(points, params));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ForestFit)->Arg(1'000)->Arg(10'000);

void BM_SimulateBenign(benchmark::State& state) {
    const LevelModel model = builtin_model("local");
    Workload workload = builtin_workload("local");
    workload.total_queries = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_benign(workload, model, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateBenign)->Arg(1'000)->Arg(10'000);

} // namespace

BENCHMARK_MAIN();
