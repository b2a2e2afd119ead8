#include "chromaname/imaging.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <map>

#include "chromaname/error.hpp"
#include "chromaname/image_io.hpp"
#include "chromaname/io_util.hpp"
#include "fixtures.hpp"

namespace chromaname {
namespace {

Image solid(std::size_t w, std::size_t h, RgbColor c) {
    return Image{w, h, std::vector<RgbColor>(w * h, c), {}};
}

// Exact color histogram, sorted the same way dominant_colors sorts its output.
std::vector<DominantColor> histogram(std::span<const RgbColor> pixels) {
    std::map<RgbColor, std::size_t> counts;
    for (const auto& p : pixels) ++counts[p];
    std::vector<DominantColor> out;
    for (const auto& [c, n] : counts) out.push_back({c, static_cast<double>(n) / pixels.size()});
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.population > b.population; });
    return out;
}

ErrorCode error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvalidArgument;
}

TEST(DominantColors, UniformImage) {
    const auto img = solid(50, 40, {255, 0, 0});
    const auto colors = dominant_colors(img.pixels, 5);
    ASSERT_EQ(colors.size(), 1u);
    EXPECT_EQ(colors[0].rgb, (RgbColor{255, 0, 0}));
    EXPECT_EQ(colors[0].population, 1.0);
}

TEST(DominantColors, HalfBlackHalfWhite) {
    std::vector<RgbColor> px(1000, RgbColor{0, 0, 0});
    std::fill(px.begin() + 500, px.end(), RgbColor{255, 255, 255});
    const auto colors = dominant_colors(px, 2);
    ASSERT_EQ(colors.size(), 2u);
    EXPECT_EQ(colors[0].population, 0.5);
    EXPECT_EQ(colors[1].population, 0.5);
    EXPECT_EQ(colors[0].rgb, (RgbColor{0, 0, 0}));
    EXPECT_EQ(colors[1].rgb, (RgbColor{255, 255, 255}));
}

TEST(DominantColors, SixtyThirtyTen) {
    std::vector<RgbColor> px;
    px.insert(px.end(), 600, RgbColor{200, 40, 40});
    px.insert(px.end(), 300, RgbColor{40, 160, 60});
    px.insert(px.end(), 100, RgbColor{30, 50, 210});
    std::shuffle(px.begin(), px.end(), std::mt19937_64(3));
    const auto colors = dominant_colors(px, 3);
    EXPECT_EQ(colors, histogram(px));
    EXPECT_EQ(colors[0].population, 0.6);
    EXPECT_EQ(colors[1].population, 0.3);
    EXPECT_EQ(colors[2].population, 0.1);
}

TEST(DominantColors, FewColorsReproduceTheHistogram) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        std::vector<RgbColor> palette(1 + rng() % n);
        for (auto& c : palette) {
            c = {static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng())};
        }
        std::vector<RgbColor> px(64 + rng() % 500);
        for (auto& p : px) p = palette[rng() % palette.size()];
        const auto got = dominant_colors(px, n);
        const auto want = histogram(px);
        ASSERT_EQ(got.size(), want.size());
        // Equal populations may be ordered differently; compare as sets.
        EXPECT_TRUE(std::is_permutation(got.begin(), got.end(), want.begin()));
    }
}

TEST(DominantColors, PopulationsAndBounds) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<RgbColor> px(100 + rng() % 3000);
        for (auto& p : px) {
            p = {static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng() % 128),
                 static_cast<std::uint8_t>(64 + rng() % 64)};
        }
        const std::size_t n = 1 + rng() % 10;
        const auto colors = dominant_colors(px, n);
        ASSERT_FALSE(colors.empty());
        EXPECT_LE(colors.size(), n);
        double total = 0.0;
        for (std::size_t i = 0; i < colors.size(); ++i) {
            total += colors[i].population;
            EXPECT_LT(colors[i].rgb.g, 128);
            EXPECT_GE(colors[i].rgb.b, 64);
            EXPECT_LT(colors[i].rgb.b, 128);
            if (i > 0) EXPECT_GE(colors[i - 1].population, colors[i].population);
        }
        EXPECT_NEAR(total, 1.0, 1e-9);
        EXPECT_EQ(dominant_colors(px, n), colors);
    }
}

TEST(DominantColors, Errors) {
    EXPECT_EQ(error_of([] { dominant_colors({}, 5); }), ErrorCode::EmptyImage);
    const std::vector<RgbColor> px(4, RgbColor{1, 2, 3});
    EXPECT_EQ(error_of([&] { dominant_colors(px, 0); }), ErrorCode::InvalidArgument);
}

TEST(Sampling, StrideAlphaAndWhite) {
    Image img = solid(10, 10, {10, 20, 30});
    img.pixels[0] = {255, 255, 255};
    img.pixels[10] = {252, 251, 253};
    img.alpha.assign(100, 255);
    img.alpha[20] = 124;
    EXPECT_EQ(sample_pixels(img, {.stride = 10}).size(), 9u);
    EXPECT_EQ(sample_pixels(img, {.stride = 10, .suppress_white = true}).size(), 7u);
    EXPECT_EQ(sample_pixels(img, {.stride = 1}).size(), 99u);
    img.alpha.assign(100, 0);
    Palette one;
    one.entries.push_back({0, rgb_to_lab({10, 20, 30}), {10, 20, 30}, {{normalize_name("ink"), 1.0}}, 1});
    EXPECT_EQ(error_of([&] { tag_decoded(img, "clear", one); }), ErrorCode::EmptyImage);
}

TEST(ImageIo, PngRoundTripKeepsAlpha) {
    testing::TempDir dir("png");
    Image img = solid(7, 5, {12, 34, 56});
    img.pixels[3] = {200, 100, 0};
    img.alpha.assign(35, 255);
    img.alpha[4] = 10;
    write_png(img, dir / "a.png");
    const auto back = read_image(dir / "a.png");
    EXPECT_EQ(back.width, 7u);
    EXPECT_EQ(back.height, 5u);
    EXPECT_EQ(back.pixels, img.pixels);
    EXPECT_EQ(back.alpha, img.alpha);

    write_png(solid(3, 3, {1, 2, 3}), dir / "b.png");
    EXPECT_TRUE(read_image(dir / "b.png").alpha.empty());
}

TEST(ImageIo, JpegDecodesNearOriginal) {
    testing::TempDir dir("jpeg");
    write_jpeg(solid(32, 32, {30, 120, 200}), dir / "a.jpg");
    const auto back = read_image(dir / "a.jpg");
    ASSERT_EQ(back.pixels.size(), 32u * 32u);
    for (const auto& p : back.pixels) {
        EXPECT_NEAR(p.r, 30, 3);
        EXPECT_NEAR(p.g, 120, 3);
        EXPECT_NEAR(p.b, 200, 3);
    }
}

TEST(ImageIo, RejectsGarbage) {
    testing::TempDir dir("garbage");
    std::ofstream(dir / "x.png") << "\x89PNG\r\n\x1a\n truncated";
    std::ofstream(dir / "y.jpg") << "\xff\xd8\xff garbage";
    std::ofstream(dir / "z.png") << "hello";
    EXPECT_EQ(error_of([&] { read_image(dir / "x.png"); }), ErrorCode::UndecodableImage);
    EXPECT_EQ(error_of([&] { read_image(dir / "y.jpg"); }), ErrorCode::UndecodableImage);
    EXPECT_EQ(error_of([&] { read_image(dir / "z.png"); }), ErrorCode::UndecodableImage);
    EXPECT_EQ(error_of([&] { read_image(dir / "none.png"); }), ErrorCode::FileUnreadable);
}

Palette rgb_palette() {
    Palette p;
    const std::vector<std::pair<const char*, RgbColor>> colors = {
        {"red", {230, 20, 20}}, {"green", {20, 200, 40}}, {"blue", {20, 40, 220}}};
    for (const auto& [name, rgb] : colors) {
        const auto lab = rgb_to_lab(rgb);
        p.entries.push_back({p.entries.size(), lab, lab_to_rgb(lab), {{normalize_name(name), 1.0}}, 1});
    }
    p.provenance = {"cafe", 1, 3};
    return p;
}

void write_fixture(const testing::TempDir& dir) {
    Image mostly_red = solid(40, 40, {240, 10, 10});
    std::fill(mostly_red.pixels.begin(), mostly_red.pixels.begin() + 400, RgbColor{255, 255, 255});
    write_png(mostly_red, dir / "red.png");
    write_png(solid(30, 20, {10, 210, 30}), dir / "green.png");
    write_jpeg(solid(24, 24, {15, 35, 230}), dir / "blue.jpg");
    std::ofstream(dir / "notes.txt") << "ignored";
    std::ofstream(dir / "broken.png") << "not a png";
}

TEST(ColorIndex, TagsAndSearchesFixture) {
    testing::TempDir dir("index");
    write_fixture(dir);
    const auto palette = rgb_palette();
    const auto index = build_index(dir.path(), palette);
    EXPECT_EQ(index.palette_digest, palette_digest(palette));
    ASSERT_EQ(index.tags.size(), 3u);
    ASSERT_EQ(index.skipped.size(), 1u);
    EXPECT_EQ(index.skipped[0].rfind("broken.png", 0), 0u);
    EXPECT_EQ(index.tags[0].image, "blue.jpg");
    EXPECT_EQ(index.tags[0].entry_id, 2u);
    EXPECT_EQ(index.tags[1].image, "green.png");
    EXPECT_EQ(index.tags[1].entry_id, 1u);
    EXPECT_EQ(index.tags[2].image, "red.png");
    EXPECT_EQ(index.tags[2].entry_id, 0u);
    EXPECT_EQ(index.tags[2].dominant.rgb, (RgbColor{240, 10, 10}));
    EXPECT_EQ(index.tags[2].dominant.population, 0.75);

    const auto hits = search_by_name(index, palette, "Red");
    ASSERT_EQ(hits.size(), 1u);
    EXPECT_EQ(hits[0].image, "red.png");
    EXPECT_EQ(hits[0].matched_name.str(), "red");
    EXPECT_EQ(search_by_name(index, palette, "gren").at(0).image, "green.png");
    EXPECT_TRUE(search_by_name(index, palette, "purple").empty());

    const auto suppressed = build_index(dir.path(), palette, 5, {.suppress_white = true});
    EXPECT_EQ(suppressed.tags[2].dominant.population, 1.0);
}

TEST(ColorIndex, DeterministicAndPersistent) {
    testing::TempDir dir("index-det");
    write_fixture(dir);
    const auto palette = rgb_palette();
    const auto a = build_index(dir.path(), palette, 5, {}, 1);
    const auto b = build_index(dir.path(), palette, 5, {}, 4);
    EXPECT_EQ(a, b);
    EXPECT_EQ(index_to_json(a), index_to_json(b));
    save_index(a, dir / "out.index");
    EXPECT_EQ(load_index(dir / "out.index"), a);
    EXPECT_EQ(read_file(dir / "out.index"), index_to_json(a));
}

TEST(ColorIndex, PaletteMismatchAndEmptyDirectory) {
    testing::TempDir dir("index-mismatch");
    write_fixture(dir);
    const auto index = build_index(dir.path(), rgb_palette());
    Palette other = rgb_palette();
    other.entries[0].names[0].name = normalize_name("scarlet");
    EXPECT_EQ(error_of([&] { search_by_name(index, other, "red"); }), ErrorCode::PaletteMismatch);

    testing::TempDir empty("index-empty");
    EXPECT_EQ(error_of([&] { build_index(empty.path(), rgb_palette()); }), ErrorCode::NoImagesFound);
}

}  // namespace
}  // namespace chromaname
