#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "chromaname/clustering.hpp"
#include "chromaname/color.hpp"
#include "chromaname/corpus.hpp"
#include "chromaname/lexicon.hpp"

namespace chromaname {

inline constexpr std::size_t kTopNames = 5;

struct NameFrequency {
    NormalizedName name;
    double probability = 0.0;

    friend bool operator==(const NameFrequency&, const NameFrequency&) = default;
};

struct PaletteEntry {
    std::size_t id = 0;
    LabPoint centroid_lab;
    RgbColor centroid_rgb;
    std::vector<NameFrequency> names;  // at most kTopNames, most probable first
    std::size_t member_count = 0;

    friend bool operator==(const PaletteEntry&, const PaletteEntry&) = default;
};

struct Provenance {
    std::string corpus_digest;
    std::uint64_t seed = 0;
    std::size_t k = 0;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Palette {
    Provenance provenance;
    std::vector<PaletteEntry> entries;  // entries[i].id == i

    friend bool operator==(const Palette&, const Palette&) = default;
};

/// Full name distribution of one cluster's members, probability descending,
/// ties in ascending name order. Throws Error(EmptyCluster).
std::vector<NameFrequency> name_frequencies(const Corpus& corpus, const ClusterModel& model,
                                            std::size_t cluster_id);

/// One entry per cluster carrying the top five names.
Palette build_palette(const Corpus& corpus, const ClusterModel& model);

/// Serialized palette document. Deterministic: equal palettes give equal bytes.
std::string palette_to_json(const Palette& palette);

/// Throws Error(SchemaViolation) naming the offending field path.
Palette palette_from_json(std::string_view text);

void save_palette(const Palette& palette, const std::filesystem::path& path);
Palette load_palette(const std::filesystem::path& path);

/// FNV-1a digest of the serialized palette.
std::string palette_digest(const Palette& palette);

enum class SwatchOrder { Hue, Id };

/// Entry ids in display order. Hue order puts achromatic entries first
/// (by value), then ascending HSV hue; ids break ties.
std::vector<std::size_t> swatch_order(const Palette& palette, SwatchOrder order);

/// SVG grid, one labeled cell per entry.
std::string swatch_svg(const Palette& palette, SwatchOrder order);
void export_swatches(const Palette& palette, const std::filesystem::path& path, SwatchOrder order);

/// CSV `id,r,g,b,top_name`.
std::string rgb_cube_csv(const Palette& palette);
void export_rgb_cube(const Palette& palette, const std::filesystem::path& path);

}  // namespace chromaname
