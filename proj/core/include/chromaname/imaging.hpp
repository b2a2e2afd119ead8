#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chromaname/color.hpp"
#include "chromaname/image_io.hpp"
#include "chromaname/palette.hpp"
#include "chromaname/query.hpp"

namespace chromaname {

struct DominantColor {
    RgbColor rgb;
    double population = 0.0;  // fraction of sampled pixels in the cell

    friend bool operator==(const DominantColor&, const DominantColor&) = default;
};

struct SamplingOptions {
    std::size_t stride = 10;        // keep every stride-th pixel in scan order
    bool suppress_white = false;    // drop pixels with every channel above white_threshold
    std::uint8_t white_threshold = 250;
    std::uint8_t min_alpha = 125;   // drop mostly transparent pixels
};

inline constexpr std::size_t kDefaultDominantColors = 5;

/// Median-cut quantization into at most `n` cells (fewer when the pixels
/// have fewer distinct colors). Each cell reports its mean color and
/// population; the list is sorted by population descending.
/// Throws Error(EmptyImage) or Error(InvalidArgument) for n == 0.
std::vector<DominantColor> dominant_colors(std::span<const RgbColor> pixels, std::size_t n);

std::vector<RgbColor> sample_pixels(const Image& image, const SamplingOptions& options);

struct ImageTag {
    std::string image;
    DominantColor dominant;
    std::size_t entry_id = 0;
    std::vector<NameFrequency> names;
    double distance = 0.0;  // CIEDE2000 from dominant color to the entry centroid

    friend bool operator==(const ImageTag&, const ImageTag&) = default;
};

/// Decode, subsample, quantize, then name the most populous color.
ImageTag tag_image(const std::filesystem::path& path, const Palette& palette,
                   std::size_t n = kDefaultDominantColors, const SamplingOptions& options = {});

/// Same as tag_image for an already decoded image.
ImageTag tag_decoded(const Image& image, std::string image_id, const Palette& palette,
                     std::size_t n = kDefaultDominantColors, const SamplingOptions& options = {});

struct ColorIndex {
    std::string palette_digest;
    std::vector<ImageTag> tags;      // sorted by image
    std::vector<std::string> skipped; // undecodable files, not persisted

    friend bool operator==(const ColorIndex& x, const ColorIndex& y) {
        return x.palette_digest == y.palette_digest && x.tags == y.tags;
    }
};

/// Tags every .png/.jpg/.jpeg file directly inside `dir`. Undecodable files
/// land in `skipped`. Throws Error(NoImagesFound) when nothing was tagged.
ColorIndex build_index(const std::filesystem::path& dir, const Palette& palette,
                       std::size_t n = kDefaultDominantColors, const SamplingOptions& options = {},
                       std::size_t threads = 0);

std::string index_to_json(const ColorIndex& index);
ColorIndex index_from_json(std::string_view text);
void save_index(const ColorIndex& index, const std::filesystem::path& path);
ColorIndex load_index(const std::filesystem::path& path);

struct SearchHit {
    std::string image;
    std::size_t entry_id = 0;
    NormalizedName matched_name;
    std::size_t match_distance = 0;
    double distance = 0.0;
};

/// Images whose tagged entry carries a name matching `query`, sorted by
/// (match distance, CIEDE2000, image). Throws Error(PaletteMismatch) when the
/// index was built with a different palette.
std::vector<SearchHit> search_by_name(const ColorIndex& index, const Palette& palette, std::string_view query,
                                      std::size_t max_distance = kDefaultMaxEditDistance);

}  // namespace chromaname
