#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "chromaname/palette.hpp"

namespace chromaname {

struct NearestEntry {
    const PaletteEntry* entry = nullptr;
    double distance = 0.0;  // CIEDE2000
};

/// Entry whose centroid minimizes CIEDE2000 to `c`; lowest id wins ties.
/// Linear scan: CIEDE2000 is not a metric, so metric-tree pruning is unsound.
/// Throws Error(EmptyPalette).
NearestEntry nearest_entry(const Palette& palette, RgbColor c);
NearestEntry nearest_entry(const Palette& palette, const LabPoint& lab);

struct ColorNaming {
    std::size_t entry_id = 0;
    double distance = 0.0;
    std::vector<NameFrequency> names;
};

ColorNaming name_color(const Palette& palette, RgbColor c);
ColorNaming name_color(const Palette& palette, const LabPoint& lab);

enum class MatchKind { Exact, Fuzzy };

struct NameMatch {
    std::size_t entry_id = 0;
    NormalizedName matched_name;
    MatchKind kind = MatchKind::Exact;
    std::size_t distance = 0;  // Levenshtein; 0 for exact
    double probability = 0.0;
};

inline constexpr std::size_t kDefaultMaxEditDistance = 2;

/// Exact matches over every stored name; if there are none, names within
/// `max_distance` edits. Sorted by (distance, probability desc, entry id).
/// Throws Error(EmptyAfterNormalization) for queries without letters.
std::vector<NameMatch> lookup_by_name(const Palette& palette, std::string_view query,
                                      std::size_t max_distance = kDefaultMaxEditDistance);

std::size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace chromaname
