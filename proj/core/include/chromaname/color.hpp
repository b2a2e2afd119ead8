#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace chromaname {

/// 8-bit sRGB triple.
struct RgbColor {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend constexpr auto operator<=>(const RgbColor&, const RgbColor&) = default;
};

/// CIELAB coordinates under D65 / 2 degree observer.
struct LabPoint {
    double L = 0.0;
    double a = 0.0;
    double b = 0.0;

    friend constexpr bool operator==(const LabPoint&, const LabPoint&) = default;
};

/// Six lowercase hex digits, stored without the '#'.
class HexCode {
public:
    explicit HexCode(RgbColor c);

    /// Accepts an optional '#', any case. Throws Error(MalformedHex).
    static HexCode parse(std::string_view text);

    std::string_view digits() const noexcept { return digits_; }
    std::string prefixed() const { return "#" + digits_; }
    RgbColor rgb() const;

    friend bool operator==(const HexCode&, const HexCode&) = default;

private:
    explicit HexCode(std::string digits) : digits_(std::move(digits)) {}
    std::string digits_;
};

/// Parses "#rrggbb" or "rrggbb" (any case). Throws Error(MalformedHex).
RgbColor parse_hex(std::string_view text);

/// Canonical "#rrggbb", lowercase.
std::string format_hex(RgbColor c);

LabPoint rgb_to_lab(RgbColor c) noexcept;

/// Inverse of rgb_to_lab. Out-of-gamut channels are clamped to [0, 255]
/// and rounded half away from zero.
RgbColor lab_to_rgb(const LabPoint& p) noexcept;

/// HSV hue in degrees [0, 360); returns a negative value for achromatic colors.
double hue_degrees(RgbColor c) noexcept;

double squared_distance(const LabPoint& p, const LabPoint& q) noexcept;

}  // namespace chromaname
