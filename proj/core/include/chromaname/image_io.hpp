#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "chromaname/color.hpp"

namespace chromaname {

/// Decoded 8-bit image in row-major order.
struct Image {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<RgbColor> pixels;
    std::vector<std::uint8_t> alpha;  // empty when fully opaque
};

/// PNG or JPEG, detected from the leading bytes. Throws Error(UndecodableImage).
Image decode_image(std::span<const std::uint8_t> bytes);

/// Throws Error(FileUnreadable) or Error(UndecodableImage).
Image read_image(const std::filesystem::path& path);

/// Throws Error(FileUnwritable).
void write_png(const Image& image, const std::filesystem::path& path);
void write_jpeg(const Image& image, const std::filesystem::path& path, int quality = 95);

}  // namespace chromaname
