#include <benchmark/benchmark.h>

#include "chromaname/lexicon.hpp"
#include "chromaname/query.hpp"

namespace {

using namespace chromaname;

Vocabulary color_vocabulary() {
    std::vector<NormalizedName> names;
    for (const char* n : {"light sky blue", "dark sea green", "medium slate blue", "pale golden rod", "deep pink",
                          "light goldenrod yellow", "dark olive green", "medium spring green", "blanched almond"}) {
        names.push_back(normalize_name(n));
    }
    return build_vocabulary(names);
}

void BM_SegmentToken(benchmark::State& state) {
    const auto vocab = color_vocabulary();
    for (auto _ : state) {
        benchmark::DoNotOptimize(segment_token("lightgoldenrodyellow", vocab));
        benchmark::DoNotOptimize(segment_token("mediumspringgreen", vocab));
        benchmark::DoNotOptimize(segment_token("darkseapink", vocab));
    }
    state.SetItemsProcessed(3 * state.iterations());
}
BENCHMARK(BM_SegmentToken);

void BM_NormalizeName(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(normalize_name("  Light-Goldenrod   YELLOW (Pale) "));
    }
}
BENCHMARK(BM_NormalizeName);

void BM_Levenshtein(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(levenshtein("light goldenrod yellow", "light golden rod yelow"));
    }
}
BENCHMARK(BM_Levenshtein);

}  // namespace
