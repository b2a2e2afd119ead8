#include "chromaname/palette.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include <json.hpp>

#include "chromaname/error.hpp"
#include "chromaname/io_util.hpp"

namespace chromaname {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::SchemaViolation, where + ": " + what);
}

const nlohmann::json& field(const nlohmann::json& obj, const std::string& where, const char* key) {
    if (!obj.is_object()) schema_error(where, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) schema_error(where + "." + key, "missing");
    return *it;
}

double number(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number()) schema_error(where, "expected a number");
    return v.get<double>();
}

std::uint64_t unsigned_int(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        schema_error(where, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

const std::string& string_field(const nlohmann::json& v, const std::string& where) {
    if (!v.is_string()) schema_error(where, "expected a string");
    return v.get_ref<const std::string&>();
}

const nlohmann::json& array_field(const nlohmann::json& v, const std::string& where, std::size_t exact = 0) {
    if (!v.is_array()) schema_error(where, "expected an array");
    if (exact != 0 && v.size() != exact) schema_error(where, "expected " + std::to_string(exact) + " elements");
    return v;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (const char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(ch);
        }
    }
    return out;
}

}  // namespace

std::vector<NameFrequency> name_frequencies(const Corpus& corpus, const ClusterModel& model,
                                            std::size_t cluster_id) {
    if (model.assignments.size() != corpus.size()) {
        throw Error(ErrorCode::InvalidArgument, "model was not built from this corpus");
    }
    std::map<std::string_view, std::size_t> counts;
    std::size_t total = 0;
    const auto& entries = corpus.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (model.assignments[i] != cluster_id) continue;
        ++counts[entries[i].name.str()];
        ++total;
    }
    if (total == 0) throw Error(ErrorCode::EmptyCluster, "cluster " + std::to_string(cluster_id) + " has no members");

    std::vector<std::pair<std::string_view, std::size_t>> ranked(counts.begin(), counts.end());
    // counts is already name-ordered; a stable sort on count keeps that as the tie-break.
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.second > y.second; });

    std::vector<NameFrequency> out;
    out.reserve(ranked.size());
    for (const auto& [name, count] : ranked) {
        out.push_back({normalize_name(name), static_cast<double>(count) / static_cast<double>(total)});
    }
    return out;
}

Palette build_palette(const Corpus& corpus, const ClusterModel& model) {
    Palette palette;
    palette.provenance = {corpus.digest(), model.seed.value, model.k};
    palette.entries.reserve(model.k);
    std::vector<std::size_t> members(model.k, 0);
    for (const auto a : model.assignments) ++members[a];
    for (std::size_t c = 0; c < model.k; ++c) {
        auto names = name_frequencies(corpus, model, c);
        if (names.size() > kTopNames) names.erase(names.begin() + kTopNames, names.end());
        palette.entries.push_back(
            {c, model.centroids[c], lab_to_rgb(model.centroids[c]), std::move(names), members[c]});
    }
    return palette;
}

std::string palette_to_json(const Palette& palette) {
    ordered_json doc;
    doc["version"] = 1;
    doc["provenance"] = {{"corpus_digest", palette.provenance.corpus_digest},
                         {"seed", palette.provenance.seed},
                         {"k", palette.provenance.k}};
    auto& entries = doc["entries"] = ordered_json::array();
    for (const auto& e : palette.entries) {
        ordered_json names = ordered_json::array();
        for (const auto& n : e.names) names.push_back({{"name", n.name.str()}, {"p", n.probability}});
        entries.push_back({{"id", e.id},
                           {"lab", {e.centroid_lab.L, e.centroid_lab.a, e.centroid_lab.b}},
                           {"rgb", {e.centroid_rgb.r, e.centroid_rgb.g, e.centroid_rgb.b}},
                           {"hex", format_hex(e.centroid_rgb)},
                           {"names", std::move(names)},
                           {"member_count", e.member_count}});
    }
    return doc.dump(1) + "\n";
}

Palette palette_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        schema_error("$", std::string("not valid JSON: ") + e.what());
    }

    if (unsigned_int(field(doc, "$", "version"), "$.version") != 1) schema_error("$.version", "unsupported version");
    Palette palette;
    const auto& prov = field(doc, "$", "provenance");
    palette.provenance.corpus_digest = string_field(field(prov, "$.provenance", "corpus_digest"), "$.provenance.corpus_digest");
    palette.provenance.seed = unsigned_int(field(prov, "$.provenance", "seed"), "$.provenance.seed");
    palette.provenance.k = unsigned_int(field(prov, "$.provenance", "k"), "$.provenance.k");

    const auto& entries = array_field(field(doc, "$", "entries"), "$.entries");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string at = "$.entries[" + std::to_string(i) + "]";
        const auto& e = entries[i];
        PaletteEntry entry;
        entry.id = unsigned_int(field(e, at, "id"), at + ".id");
        if (entry.id != i) schema_error(at + ".id", "ids must be dense and in order");

        const auto& lab = array_field(field(e, at, "lab"), at + ".lab", 3);
        entry.centroid_lab = {number(lab[0], at + ".lab[0]"), number(lab[1], at + ".lab[1]"),
                              number(lab[2], at + ".lab[2]")};
        if (!std::isfinite(entry.centroid_lab.L) || !std::isfinite(entry.centroid_lab.a) ||
            !std::isfinite(entry.centroid_lab.b)) {
            schema_error(at + ".lab", "components must be finite");
        }

        if (!e.contains("rgb")) schema_error(at + ".rgb", "missing (centroid_rgb)");
        const auto& rgb = array_field(e["rgb"], at + ".rgb", 3);
        std::uint8_t ch[3];
        for (std::size_t c = 0; c < 3; ++c) {
            const auto v = unsigned_int(rgb[c], at + ".rgb[" + std::to_string(c) + "]");
            if (v > 255) schema_error(at + ".rgb[" + std::to_string(c) + "]", "channel out of [0, 255]");
            ch[c] = static_cast<std::uint8_t>(v);
        }
        entry.centroid_rgb = {ch[0], ch[1], ch[2]};
        if (entry.centroid_rgb != lab_to_rgb(entry.centroid_lab)) schema_error(at + ".rgb", "disagrees with lab");

        const auto& hex = string_field(field(e, at, "hex"), at + ".hex");
        try {
            if (parse_hex(hex) != entry.centroid_rgb) schema_error(at + ".hex", "disagrees with rgb");
        } catch (const Error& err) {
            if (err.code() == ErrorCode::SchemaViolation) throw;
            schema_error(at + ".hex", err.what());
        }

        const auto& names = array_field(field(e, at, "names"), at + ".names");
        if (names.size() > kTopNames) schema_error(at + ".names", "more than 5 names");
        double mass = 0.0;
        for (std::size_t n = 0; n < names.size(); ++n) {
            const std::string nat = at + ".names[" + std::to_string(n) + "]";
            const auto& text_name = string_field(field(names[n], nat, "name"), nat + ".name");
            std::optional<NormalizedName> name;
            try {
                name = normalize_name(text_name);
            } catch (const Error&) {
            }
            if (!name || name->str() != text_name) schema_error(nat + ".name", "not a normalized name");
            const double p = number(field(names[n], nat, "p"), nat + ".p");
            if (!(p > 0.0 && p <= 1.0)) schema_error(nat + ".p", "probability outside (0, 1]");
            if (n > 0 && p > entry.names.back().probability) schema_error(nat + ".p", "names not in descending order");
            for (const auto& prev : entry.names) {
                if (prev.name == *name) schema_error(nat + ".name", "duplicate name");
            }
            mass += p;
            entry.names.push_back({std::move(*name), p});
        }
        if (mass > 1.0 + 1e-9) schema_error(at + ".names", "probabilities sum above 1");

        entry.member_count = unsigned_int(field(e, at, "member_count"), at + ".member_count");
        if (entry.member_count == 0) schema_error(at + ".member_count", "must be positive");
        palette.entries.push_back(std::move(entry));
    }
    if (palette.provenance.k != palette.entries.size()) schema_error("$.provenance.k", "differs from entry count");
    return palette;
}

void save_palette(const Palette& palette, const std::filesystem::path& path) {
    write_file_atomic(path, palette_to_json(palette));
}

Palette load_palette(const std::filesystem::path& path) { return palette_from_json(read_file(path)); }

std::string palette_digest(const Palette& palette) { return digest_hex(fnv1a64(palette_to_json(palette))); }

std::vector<std::size_t> swatch_order(const Palette& palette, SwatchOrder order) {
    std::vector<std::size_t> ids(palette.entries.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = palette.entries[i].id;
    if (order == SwatchOrder::Hue) {
        const auto key = [&](std::size_t id) {
            const RgbColor c = palette.entries[id].centroid_rgb;
            const int value = std::max({c.r, c.g, c.b});
            return std::tuple(hue_degrees(c), value, id);
        };
        std::sort(ids.begin(), ids.end(), [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
    }
    return ids;
}

std::string swatch_svg(const Palette& palette, SwatchOrder order) {
    constexpr int kCell = 96, kSwatch = 72, kLabel = 18, kColumns = 20;
    const auto ids = swatch_order(palette, order);
    const int n = static_cast<int>(ids.size());
    const int columns = std::max(1, std::min(n, kColumns));
    const int rows = (n + columns - 1) / columns;
    const int width = columns * kCell;
    const int height = std::max(1, rows) * (kSwatch + kLabel + 6);

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
                      std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"10\">\n";
    for (int i = 0; i < n; ++i) {
        const auto& e = palette.entries[ids[static_cast<std::size_t>(i)]];
        const int x = (i % columns) * kCell + (kCell - kSwatch) / 2;
        const int y = (i / columns) * (kSwatch + kLabel + 6);
        const std::string label = e.names.empty() ? format_hex(e.centroid_rgb) : e.names.front().name.str();
        svg += "<g class=\"swatch\" data-id=\"" + std::to_string(e.id) + "\">";
        svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" + std::to_string(kSwatch) +
               "\" height=\"" + std::to_string(kSwatch) + "\" fill=\"" + format_hex(e.centroid_rgb) + "\"/>";
        svg += "<text x=\"" + std::to_string(x + kSwatch / 2) + "\" y=\"" + std::to_string(y + kSwatch + 13) +
               "\" text-anchor=\"middle\">" + xml_escape(label) + "</text></g>\n";
    }
    return svg + "</svg>\n";
}

void export_swatches(const Palette& palette, const std::filesystem::path& path, SwatchOrder order) {
    if (palette.entries.empty()) throw Error(ErrorCode::EmptyPalette, "cannot render an empty palette");
    write_file_atomic(path, swatch_svg(palette, order));
}

std::string rgb_cube_csv(const Palette& palette) {
    std::string out = "id,r,g,b,top_name\n";
    for (const auto& e : palette.entries) {
        out += std::to_string(e.id) + "," + std::to_string(e.centroid_rgb.r) + "," + std::to_string(e.centroid_rgb.g) +
               "," + std::to_string(e.centroid_rgb.b) + "," + (e.names.empty() ? "" : e.names.front().name.str()) + "\n";
    }
    return out;
}

void export_rgb_cube(const Palette& palette, const std::filesystem::path& path) {
    write_file_atomic(path, rgb_cube_csv(palette));
}

}  // namespace chromaname
