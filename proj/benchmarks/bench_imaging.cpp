#include <benchmark/benchmark.h>

#include <random>

#include "chromaname/imaging.hpp"

namespace {

using namespace chromaname;

void BM_DominantColors(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::vector<RgbColor> pixels(static_cast<std::size_t>(state.range(0)));
    for (auto& p : pixels) {
        p = {static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng())};
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(dominant_colors(pixels, 5));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DominantColors)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMicrosecond);

}  // namespace
