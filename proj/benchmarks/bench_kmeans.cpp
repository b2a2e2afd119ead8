#include <benchmark/benchmark.h>

#include <random>

#include "chromaname/clustering.hpp"

namespace {

using namespace chromaname;

std::vector<LabPoint> random_points(std::size_t n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> L(0, 100), ab(-100, 100);
    std::vector<LabPoint> out(n);
    for (auto& p : out) p = {L(rng), ab(rng), ab(rng)};
    return out;
}

void BM_KMeans(benchmark::State& state) {
    const auto points = random_points(static_cast<std::size_t>(state.range(0)));
    const auto k = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kmeans(points, k, {3}, {.restarts = 1}));
    }
}
BENCHMARK(BM_KMeans)->Args({1000, 60})->Args({1000, 280})->Args({20000, 280})->Unit(benchmark::kMillisecond);

void BM_MeanIntraDe(benchmark::State& state) {
    const auto points = random_points(20000);
    const auto model = kmeans(points, 280, {3}, {.restarts = 1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(mean_intra_de(points, model));
    }
}
BENCHMARK(BM_MeanIntraDe)->Unit(benchmark::kMillisecond);

}  // namespace
