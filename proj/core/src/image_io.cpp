#include "chromaname/image_io.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>

#include <jpeglib.h>
#include <png.h>

#include "chromaname/error.hpp"
#include "chromaname/io_util.hpp"

namespace chromaname {

namespace {

bool is_png(std::span<const std::uint8_t> b) {
    static constexpr std::uint8_t kMagic[] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    return b.size() >= sizeof kMagic && std::memcmp(b.data(), kMagic, sizeof kMagic) == 0;
}

bool is_jpeg(std::span<const std::uint8_t> b) { return b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF; }

Image decode_png(std::span<const std::uint8_t> bytes) {
    png_image png;
    std::memset(&png, 0, sizeof png);
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
        throw Error(ErrorCode::UndecodableImage, std::string("png: ") + png.message);
    }
    png.format = PNG_FORMAT_RGBA;
    std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, rgba.data(), 0, nullptr)) {
        const std::string message = png.message;
        png_image_free(&png);
        throw Error(ErrorCode::UndecodableImage, "png: " + message);
    }
    Image img;
    img.width = png.width;
    img.height = png.height;
    const std::size_t n = img.width * img.height;
    img.pixels.resize(n);
    img.alpha.resize(n);
    bool opaque = true;
    for (std::size_t i = 0; i < n; ++i) {
        img.pixels[i] = {rgba[4 * i], rgba[4 * i + 1], rgba[4 * i + 2]};
        img.alpha[i] = rgba[4 * i + 3];
        opaque = opaque && img.alpha[i] == 255;
    }
    if (opaque) img.alpha.clear();
    return img;
}

struct JpegErrorManager {
    jpeg_error_mgr base;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

// The setjmp frame must not own objects with non-trivial destructors.
bool decode_jpeg_raw(std::span<const std::uint8_t> bytes, std::vector<std::uint8_t>& rgb, std::size_t& width,
                     std::size_t& height, char* message) {
    jpeg_decompress_struct cinfo;
    JpegErrorManager err;
    cinfo.err = jpeg_std_error(&err.base);
    err.base.error_exit = jpeg_error_exit;
    err.message[0] = '\0';
    if (setjmp(err.jump)) {
        std::strncpy(message, err.message, JMSG_LENGTH_MAX);
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    width = cinfo.output_width;
    height = cinfo.output_height;
    rgb.resize(width * height * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = rgb.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return true;
}

Image decode_jpeg(std::span<const std::uint8_t> bytes) {
    std::vector<std::uint8_t> rgb;
    Image img;
    char message[JMSG_LENGTH_MAX] = {};
    if (!decode_jpeg_raw(bytes, rgb, img.width, img.height, message)) {
        throw Error(ErrorCode::UndecodableImage, std::string("jpeg: ") + message);
    }
    img.pixels.resize(img.width * img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = {rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]};
    return img;
}

bool encode_jpeg_raw(const std::vector<std::uint8_t>& rgb, std::size_t width, std::size_t height, int quality,
                     unsigned char** out, unsigned long* out_size) {
    jpeg_compress_struct cinfo;
    JpegErrorManager err;
    cinfo.err = jpeg_std_error(&err.base);
    err.base.error_exit = jpeg_error_exit;
    if (setjmp(err.jump)) {
        jpeg_destroy_compress(&cinfo);
        return false;
    }
    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, out, out_size);
    cinfo.image_width = static_cast<JDIMENSION>(width);
    cinfo.image_height = static_cast<JDIMENSION>(height);
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
        JSAMPROW row = const_cast<JSAMPROW>(rgb.data() + static_cast<std::size_t>(cinfo.next_scanline) * width * 3);
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);
    return true;
}

}  // namespace

Image decode_image(std::span<const std::uint8_t> bytes) {
    if (is_png(bytes)) return decode_png(bytes);
    if (is_jpeg(bytes)) return decode_jpeg(bytes);
    throw Error(ErrorCode::UndecodableImage, "unrecognized image format");
}

Image read_image(const std::filesystem::path& path) {
    const std::string data = read_file(path);
    try {
        return decode_image({reinterpret_cast<const std::uint8_t*>(data.data()), data.size()});
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

void write_png(const Image& image, const std::filesystem::path& path) {
    std::vector<std::uint8_t> rgba(image.pixels.size() * 4);
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        rgba[4 * i] = image.pixels[i].r;
        rgba[4 * i + 1] = image.pixels[i].g;
        rgba[4 * i + 2] = image.pixels[i].b;
        rgba[4 * i + 3] = image.alpha.empty() ? 255 : image.alpha[i];
    }
    png_image png;
    std::memset(&png, 0, sizeof png);
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(image.width);
    png.height = static_cast<png_uint_32>(image.height);
    png.format = PNG_FORMAT_RGBA;
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&png, nullptr, &size, 0, rgba.data(), 0, nullptr)) {
        throw Error(ErrorCode::FileUnwritable, std::string("png: ") + png.message);
    }
    std::string buffer(size, '\0');
    if (!png_image_write_to_memory(&png, buffer.data(), &size, 0, rgba.data(), 0, nullptr)) {
        throw Error(ErrorCode::FileUnwritable, std::string("png: ") + png.message);
    }
    buffer.resize(size);
    write_file_atomic(path, buffer);
}

void write_jpeg(const Image& image, const std::filesystem::path& path, int quality) {
    std::vector<std::uint8_t> rgb(image.pixels.size() * 3);
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        rgb[3 * i] = image.pixels[i].r;
        rgb[3 * i + 1] = image.pixels[i].g;
        rgb[3 * i + 2] = image.pixels[i].b;
    }
    unsigned char* out = nullptr;
    unsigned long out_size = 0;
    const bool ok = encode_jpeg_raw(rgb, image.width, image.height, quality, &out, &out_size);
    std::unique_ptr<unsigned char, decltype(&std::free)> owned(out, &std::free);
    if (!ok) throw Error(ErrorCode::FileUnwritable, "jpeg encoding failed for '" + path.string() + "'");
    write_file_atomic(path, {reinterpret_cast<const char*>(out), out_size});
}

}  // namespace chromaname
