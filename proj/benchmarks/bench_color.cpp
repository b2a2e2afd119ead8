#include <benchmark/benchmark.h>

#include <random>

#include "chromaname/color.hpp"
#include "chromaname/delta_e.hpp"

namespace {

using namespace chromaname;

std::vector<RgbColor> random_colors(std::size_t n) {
    std::mt19937_64 rng(1);
    std::vector<RgbColor> out(n);
    for (auto& c : out) {
        c = {static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng())};
    }
    return out;
}

void BM_RgbToLab(benchmark::State& state) {
    const auto colors = random_colors(4096);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rgb_to_lab(colors[i++ & 4095]));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RgbToLab);

void BM_LabToRgb(benchmark::State& state) {
    std::vector<LabPoint> labs;
    for (const auto& c : random_colors(4096)) labs.push_back(rgb_to_lab(c));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lab_to_rgb(labs[i++ & 4095]));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LabToRgb);

void BM_Ciede2000(benchmark::State& state) {
    std::vector<LabPoint> labs;
    for (const auto& c : random_colors(4097)) labs.push_back(rgb_to_lab(c));
    std::size_t i = 0;
    for (auto _ : state) {
        const std::size_t j = i++ & 4095;
        benchmark::DoNotOptimize(ciede2000(labs[j], labs[j + 1]));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Ciede2000);

}  // namespace
