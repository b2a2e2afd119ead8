#include "chromaname/color.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "chromaname/error.hpp"

namespace chromaname {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MalformedHex: return "MalformedHex";
        case ErrorCode::EmptyAfterNormalization: return "EmptyAfterNormalization";
        case ErrorCode::FileUnreadable: return "FileUnreadable";
        case ErrorCode::FileUnwritable: return "FileUnwritable";
        case ErrorCode::MalformedRow: return "MalformedRow";
        case ErrorCode::EmptyCorpus: return "EmptyCorpus";
        case ErrorCode::TooFewDistinctPoints: return "TooFewDistinctPoints";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NoKneeFound: return "NoKneeFound";
        case ErrorCode::EmptyCluster: return "EmptyCluster";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::EmptyPalette: return "EmptyPalette";
        case ErrorCode::EmptyImage: return "EmptyImage";
        case ErrorCode::UndecodableImage: return "UndecodableImage";
        case ErrorCode::NoImagesFound: return "NoImagesFound";
        case ErrorCode::PaletteMismatch: return "PaletteMismatch";
    }
    return "Unknown";
}

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

// IEC 61966-2-1 linear sRGB -> XYZ.
constexpr Mat3 kRgbToXyz = {{
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
}};

constexpr Mat3 invert(const Mat3& m) {
    const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
    Mat3 r{};
    r[0][0] = c00 / det;
    r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    r[1][0] = c01 / det;
    r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    r[2][0] = c02 / det;
    r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return r;
}

constexpr Mat3 kXyzToRgb = invert(kRgbToXyz);

// D65 white taken as the image of linear (1, 1, 1) so white lands exactly on a = b = 0.
constexpr std::array<double, 3> kWhite = {
    kRgbToXyz[0][0] + kRgbToXyz[0][1] + kRgbToXyz[0][2],
    kRgbToXyz[1][0] + kRgbToXyz[1][1] + kRgbToXyz[1][2],
    kRgbToXyz[2][0] + kRgbToXyz[2][1] + kRgbToXyz[2][2],
};

constexpr double kDelta = 6.0 / 29.0;

double srgb_decode(double v) {
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double srgb_encode(double v) {
    return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

double lab_f(double t) {
    return t > kDelta * kDelta * kDelta ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_f_inv(double f) {
    return f > kDelta ? f * f * f : 3.0 * kDelta * kDelta * (f - 4.0 / 29.0);
}

std::uint8_t to_channel(double linear) {
    const double v = std::clamp(srgb_encode(linear) * 255.0, 0.0, 255.0);
    return static_cast<std::uint8_t>(std::round(v));
}

int hex_digit(char ch) {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    return -1;
}

}  // namespace

RgbColor parse_hex(std::string_view text) {
    std::string_view digits = text;
    if (!digits.empty() && digits.front() == '#') digits.remove_prefix(1);
    if (digits.size() != 6) {
        throw Error(ErrorCode::MalformedHex,
                    "hex code '" + std::string(text) + "' must have exactly 6 digits");
    }
    std::array<std::uint8_t, 3> ch{};
    for (std::size_t i = 0; i < 3; ++i) {
        const int hi = hex_digit(digits[2 * i]);
        const int lo = hex_digit(digits[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw Error(ErrorCode::MalformedHex,
                        "hex code '" + std::string(text) + "' contains a non-hex character");
        }
        ch[i] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    return {ch[0], ch[1], ch[2]};
}

std::string format_hex(RgbColor c) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out = "#000000";
    const std::array<std::uint8_t, 3> ch = {c.r, c.g, c.b};
    for (std::size_t i = 0; i < 3; ++i) {
        out[1 + 2 * i] = kDigits[ch[i] >> 4];
        out[2 + 2 * i] = kDigits[ch[i] & 0xF];
    }
    return out;
}

HexCode::HexCode(RgbColor c) : digits_(format_hex(c).substr(1)) {}

HexCode HexCode::parse(std::string_view text) { return HexCode(parse_hex(text)); }

RgbColor HexCode::rgb() const { return parse_hex(digits_); }

LabPoint rgb_to_lab(RgbColor c) noexcept {
    const std::array<double, 3> lin = {srgb_decode(c.r / 255.0), srgb_decode(c.g / 255.0),
                                       srgb_decode(c.b / 255.0)};
    std::array<double, 3> f{};
    for (std::size_t i = 0; i < 3; ++i) {
        const double xyz =
            kRgbToXyz[i][0] * lin[0] + kRgbToXyz[i][1] * lin[1] + kRgbToXyz[i][2] * lin[2];
        f[i] = lab_f(xyz / kWhite[i]);
    }
    return {116.0 * f[1] - 16.0, 500.0 * (f[0] - f[1]), 200.0 * (f[1] - f[2])};
}

RgbColor lab_to_rgb(const LabPoint& p) noexcept {
    const double fy = (p.L + 16.0) / 116.0;
    const std::array<double, 3> f = {fy + p.a / 500.0, fy, fy - p.b / 200.0};
    std::array<double, 3> xyz{};
    for (std::size_t i = 0; i < 3; ++i) xyz[i] = kWhite[i] * lab_f_inv(f[i]);
    std::array<double, 3> lin{};
    for (std::size_t i = 0; i < 3; ++i) {
        lin[i] = kXyzToRgb[i][0] * xyz[0] + kXyzToRgb[i][1] * xyz[1] + kXyzToRgb[i][2] * xyz[2];
    }
    return {to_channel(lin[0]), to_channel(lin[1]), to_channel(lin[2])};
}

double hue_degrees(RgbColor c) noexcept {
    const int r = c.r, g = c.g, b = c.b;
    const int hi = std::max({r, g, b});
    const int lo = std::min({r, g, b});
    if (hi == lo) return -1.0;
    const double span = hi - lo;
    double h = 0.0;
    if (hi == r) {
        h = 60.0 * std::fmod((g - b) / span + 6.0, 6.0);
    } else if (hi == g) {
        h = 60.0 * ((b - r) / span + 2.0);
    } else {
        h = 60.0 * ((r - g) / span + 4.0);
    }
    return h >= 360.0 ? h - 360.0 : h;
}

double squared_distance(const LabPoint& p, const LabPoint& q) noexcept {
    const double dL = p.L - q.L;
    const double da = p.a - q.a;
    const double db = p.b - q.b;
    return dL * dL + da * da + db * db;
}

}  // namespace chromaname
