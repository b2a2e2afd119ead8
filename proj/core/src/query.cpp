#include "chromaname/query.hpp"

#include <algorithm>
#include <numeric>

#include "chromaname/delta_e.hpp"
#include "chromaname/error.hpp"

namespace chromaname {

NearestEntry nearest_entry(const Palette& palette, const LabPoint& lab) {
    if (palette.entries.empty()) throw Error(ErrorCode::EmptyPalette, "palette has no entries");
    NearestEntry best{&palette.entries.front(), ciede2000(lab, palette.entries.front().centroid_lab)};
    for (const auto& e : palette.entries) {
        const double d = ciede2000(lab, e.centroid_lab);
        if (d < best.distance || (d == best.distance && e.id < best.entry->id)) best = {&e, d};
    }
    return best;
}

NearestEntry nearest_entry(const Palette& palette, RgbColor c) { return nearest_entry(palette, rgb_to_lab(c)); }

ColorNaming name_color(const Palette& palette, const LabPoint& lab) {
    const auto nearest = nearest_entry(palette, lab);
    return {nearest.entry->id, nearest.distance, nearest.entry->names};
}

ColorNaming name_color(const Palette& palette, RgbColor c) { return name_color(palette, rgb_to_lab(c)); }

std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

std::vector<NameMatch> lookup_by_name(const Palette& palette, std::string_view query, std::size_t max_distance) {
    const NormalizedName needle = normalize_name(query);

    std::vector<NameMatch> exact;
    std::vector<NameMatch> fuzzy;
    for (const auto& e : palette.entries) {
        for (const auto& n : e.names) {
            if (n.name == needle) {
                exact.push_back({e.id, n.name, MatchKind::Exact, 0, n.probability});
                continue;
            }
            const std::string& s = n.name.str();
            const std::size_t gap = s.size() > needle.str().size() ? s.size() - needle.str().size()
                                                                   : needle.str().size() - s.size();
            if (gap > max_distance) continue;
            const std::size_t d = levenshtein(needle.str(), s);
            if (d <= max_distance) fuzzy.push_back({e.id, n.name, MatchKind::Fuzzy, d, n.probability});
        }
    }
    auto& out = exact.empty() ? fuzzy : exact;
    std::sort(out.begin(), out.end(), [](const NameMatch& x, const NameMatch& y) {
        if (x.distance != y.distance) return x.distance < y.distance;
        if (x.probability != y.probability) return x.probability > y.probability;
        if (x.entry_id != y.entry_id) return x.entry_id < y.entry_id;
        return x.matched_name < y.matched_name;
    });
    return std::move(out);
}

}  // namespace chromaname
