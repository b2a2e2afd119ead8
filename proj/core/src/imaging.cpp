#include "chromaname/imaging.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <optional>
#include <thread>

#include <json.hpp>

#include "chromaname/error.hpp"
#include "chromaname/io_util.hpp"

namespace chromaname {

namespace {

std::uint8_t channel(RgbColor c, int axis) { return axis == 0 ? c.r : axis == 1 ? c.g : c.b; }

struct Box {
    std::vector<RgbColor> pixels;

    std::array<int, 3> ranges() const {
        std::array<int, 3> lo = {255, 255, 255};
        std::array<int, 3> hi = {0, 0, 0};
        for (const auto p : pixels) {
            for (int a = 0; a < 3; ++a) {
                lo[a] = std::min<int>(lo[a], channel(p, a));
                hi[a] = std::max<int>(hi[a], channel(p, a));
            }
        }
        return {hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]};
    }

    bool splittable() const {
        const auto r = ranges();
        return r[0] > 0 || r[1] > 0 || r[2] > 0;
    }
};

// Splits along the widest channel at the median value. Both halves are non-empty.
std::pair<Box, Box> split(Box box) {
    const auto r = box.ranges();
    const int axis = static_cast<int>(std::max_element(r.begin(), r.end()) - r.begin());
    std::sort(box.pixels.begin(), box.pixels.end(), [axis](RgbColor x, RgbColor y) {
        if (channel(x, axis) != channel(y, axis)) return channel(x, axis) < channel(y, axis);
        return x < y;
    });
    const std::uint8_t top = channel(box.pixels.back(), axis);
    std::uint8_t cut = channel(box.pixels[(box.pixels.size() - 1) / 2], axis);
    if (cut == top) {
        // Median sits on the maximum: cut just below it instead.
        for (auto it = box.pixels.rbegin(); it != box.pixels.rend(); ++it) {
            if (channel(*it, axis) < top) {
                cut = channel(*it, axis);
                break;
            }
        }
    }
    const auto mid = std::partition_point(box.pixels.begin(), box.pixels.end(),
                                          [&](RgbColor p) { return channel(p, axis) <= cut; });
    Box lower{{box.pixels.begin(), mid}};
    Box upper{{mid, box.pixels.end()}};
    return {std::move(lower), std::move(upper)};
}

RgbColor mean_color(const std::vector<RgbColor>& pixels) {
    std::array<std::uint64_t, 3> sum = {0, 0, 0};
    for (const auto p : pixels) {
        sum[0] += p.r;
        sum[1] += p.g;
        sum[2] += p.b;
    }
    const double n = static_cast<double>(pixels.size());
    return {static_cast<std::uint8_t>(std::round(static_cast<double>(sum[0]) / n)),
            static_cast<std::uint8_t>(std::round(static_cast<double>(sum[1]) / n)),
            static_cast<std::uint8_t>(std::round(static_cast<double>(sum[2]) / n))};
}

bool has_image_extension(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::SchemaViolation, where + ": " + what);
}

}  // namespace

std::vector<DominantColor> dominant_colors(std::span<const RgbColor> pixels, std::size_t n) {
    if (pixels.empty()) throw Error(ErrorCode::EmptyImage, "no pixels to quantize");
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "dominant color count must be >= 1");

    std::vector<Box> boxes;
    boxes.push_back({{pixels.begin(), pixels.end()}});
    while (boxes.size() < n) {
        std::optional<std::size_t> target;
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            if (!boxes[i].splittable()) continue;
            if (!target || boxes[i].pixels.size() > boxes[*target].pixels.size()) target = i;
        }
        if (!target) break;
        auto [lower, upper] = split(std::move(boxes[*target]));
        boxes[*target] = std::move(lower);
        boxes.insert(boxes.begin() + static_cast<std::ptrdiff_t>(*target) + 1, std::move(upper));
    }

    const double total = static_cast<double>(pixels.size());
    std::vector<DominantColor> out;
    out.reserve(boxes.size());
    for (const auto& box : boxes) {
        out.push_back({mean_color(box.pixels), static_cast<double>(box.pixels.size()) / total});
    }
    std::stable_sort(out.begin(), out.end(), [](const DominantColor& x, const DominantColor& y) {
        if (x.population != y.population) return x.population > y.population;
        return x.rgb < y.rgb;
    });
    return out;
}

std::vector<RgbColor> sample_pixels(const Image& image, const SamplingOptions& options) {
    const std::size_t stride = std::max<std::size_t>(1, options.stride);
    std::vector<RgbColor> out;
    out.reserve(image.pixels.size() / stride + 1);
    for (std::size_t i = 0; i < image.pixels.size(); i += stride) {
        if (!image.alpha.empty() && image.alpha[i] < options.min_alpha) continue;
        const RgbColor p = image.pixels[i];
        if (options.suppress_white && p.r > options.white_threshold && p.g > options.white_threshold &&
            p.b > options.white_threshold) {
            continue;
        }
        out.push_back(p);
    }
    return out;
}

ImageTag tag_decoded(const Image& image, std::string image_id, const Palette& palette, std::size_t n,
                     const SamplingOptions& options) {
    if (palette.entries.empty()) throw Error(ErrorCode::EmptyPalette, "palette has no entries");
    const auto pixels = sample_pixels(image, options);
    if (pixels.empty()) throw Error(ErrorCode::EmptyImage, image_id + ": no usable pixels after sampling");
    const auto dominant = dominant_colors(pixels, n).front();
    auto naming = name_color(palette, dominant.rgb);
    return {std::move(image_id), dominant, naming.entry_id, std::move(naming.names), naming.distance};
}

ImageTag tag_image(const std::filesystem::path& path, const Palette& palette, std::size_t n,
                   const SamplingOptions& options) {
    if (palette.entries.empty()) throw Error(ErrorCode::EmptyPalette, "palette has no entries");
    return tag_decoded(read_image(path), path.string(), palette, n, options);
}

ColorIndex build_index(const std::filesystem::path& dir, const Palette& palette, std::size_t n,
                       const SamplingOptions& options, std::size_t threads) {
    if (palette.entries.empty()) throw Error(ErrorCode::EmptyPalette, "palette has no entries");
    std::error_code ec;
    std::vector<std::filesystem::path> files;
    for (const auto& item : std::filesystem::directory_iterator(dir, ec)) {
        if (item.is_regular_file() && has_image_extension(item.path())) files.push_back(item.path());
    }
    if (ec) throw Error(ErrorCode::FileUnreadable, "cannot list '" + dir.string() + "': " + ec.message());
    std::sort(files.begin(), files.end(),
              [](const auto& x, const auto& y) { return x.filename().generic_string() < y.filename().generic_string(); });

    std::vector<std::optional<ImageTag>> slots(files.size());
    std::vector<std::string> failures(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            try {
                slots[i] = tag_decoded(read_image(files[i]), files[i].filename().generic_string(), palette, n, options);
            } catch (const Error& e) {
                failures[i] = files[i].filename().generic_string() + ": " + e.what();
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(1, files.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    ColorIndex index;
    index.palette_digest = palette_digest(palette);
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (slots[i]) {
            index.tags.push_back(std::move(*slots[i]));
        } else {
            index.skipped.push_back(std::move(failures[i]));
        }
    }
    if (index.tags.empty()) throw Error(ErrorCode::NoImagesFound, "no decodable images in '" + dir.string() + "'");
    return index;
}

std::string index_to_json(const ColorIndex& index) {
    nlohmann::ordered_json doc;
    doc["palette_digest"] = index.palette_digest;
    auto& tags = doc["tags"] = nlohmann::ordered_json::array();
    for (const auto& t : index.tags) {
        nlohmann::ordered_json names = nlohmann::ordered_json::array();
        for (const auto& n : t.names) names.push_back({{"name", n.name.str()}, {"p", n.probability}});
        tags.push_back({{"image", t.image},
                        {"rgb", {t.dominant.rgb.r, t.dominant.rgb.g, t.dominant.rgb.b}},
                        {"population", t.dominant.population},
                        {"entry_id", t.entry_id},
                        {"names", std::move(names)},
                        {"de00", t.distance}});
    }
    return doc.dump(1) + "\n";
}

ColorIndex index_from_json(std::string_view text) {
    ColorIndex index;
    try {
        const auto doc = nlohmann::json::parse(text);
        if (!doc.is_object() || !doc.contains("palette_digest")) schema_error("$.palette_digest", "missing");
        if (!doc.contains("tags") || !doc["tags"].is_array()) schema_error("$.tags", "missing or not an array");
        index.palette_digest = doc["palette_digest"].get<std::string>();
        for (std::size_t i = 0; i < doc["tags"].size(); ++i) {
            const auto& t = doc["tags"][i];
            const std::string at = "$.tags[" + std::to_string(i) + "]";
            for (const char* key : {"image", "rgb", "entry_id", "names", "de00"}) {
                if (!t.contains(key)) schema_error(at + "." + key, "missing");
            }
            ImageTag tag;
            tag.image = t["image"].get<std::string>();
            const auto rgb = t["rgb"].get<std::array<int, 3>>();
            for (int c = 0; c < 3; ++c) {
                if (rgb[c] < 0 || rgb[c] > 255) schema_error(at + ".rgb", "channel out of [0, 255]");
            }
            tag.dominant.rgb = {static_cast<std::uint8_t>(rgb[0]), static_cast<std::uint8_t>(rgb[1]),
                                static_cast<std::uint8_t>(rgb[2])};
            tag.dominant.population = t.value("population", 1.0);
            tag.entry_id = t["entry_id"].get<std::size_t>();
            tag.distance = t["de00"].get<double>();
            for (const auto& n : t["names"]) {
                const auto raw = n.at("name").get<std::string>();
                auto name = normalize_name(raw);
                if (name.str() != raw) schema_error(at + ".names", "'" + raw + "' is not a normalized name");
                tag.names.push_back({std::move(name), n.at("p").get<double>()});
            }
            index.tags.push_back(std::move(tag));
        }
    } catch (const nlohmann::json::exception& e) {
        schema_error("$", e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaViolation) throw;
        schema_error("$", e.what());
    }
    return index;
}

void save_index(const ColorIndex& index, const std::filesystem::path& path) {
    write_file_atomic(path, index_to_json(index));
}

ColorIndex load_index(const std::filesystem::path& path) { return index_from_json(read_file(path)); }

std::vector<SearchHit> search_by_name(const ColorIndex& index, const Palette& palette, std::string_view query,
                                      std::size_t max_distance) {
    if (index.palette_digest != palette_digest(palette)) {
        throw Error(ErrorCode::PaletteMismatch, "index was built with palette " + index.palette_digest +
                                                    ", not " + palette_digest(palette));
    }
    // Best (lowest-distance, first-ranked) match per entry.
    std::map<std::size_t, const NameMatch*> by_entry;
    const auto matches = lookup_by_name(palette, query, max_distance);
    for (const auto& m : matches) by_entry.emplace(m.entry_id, &m);

    std::vector<SearchHit> hits;
    for (const auto& tag : index.tags) {
        const auto it = by_entry.find(tag.entry_id);
        if (it == by_entry.end()) continue;
        hits.push_back({tag.image, tag.entry_id, it->second->matched_name, it->second->distance, tag.distance});
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& x, const SearchHit& y) {
        if (x.match_distance != y.match_distance) return x.match_distance < y.match_distance;
        if (x.distance != y.distance) return x.distance < y.distance;
        return x.image < y.image;
    });
    return hits;
}

}  // namespace chromaname
