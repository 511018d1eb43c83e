#include "imgq/codec.hpp"

#include "imgq/error.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>

// jpeglib.h expects stdio declarations to precede it.
#include <jpeglib.h>

namespace imgq {

namespace {

bool is_png(std::span<const std::uint8_t> b) {
    static constexpr std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    return b.size() >= 8 && std::equal(b.begin(), b.begin() + 8, sig);
}

bool is_jpeg(std::span<const std::uint8_t> b) {
    return b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF;
}

RasterImage decode_png(std::span<const std::uint8_t> bytes) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
        throw Error(ErrorCode::DecodeError, std::string("png: ") + image.message);
    image.format = PNG_FORMAT_RGB;
    std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw Error(ErrorCode::DecodeError, "png: " + msg);
    }
    const int w = static_cast<int>(image.width);
    const int h = static_cast<int>(image.height);
    std::vector<double> data(buf.size());
    std::transform(buf.begin(), buf.end(), data.begin(), [](std::uint8_t v) { return v / 255.0; });
    return RasterImage(w, h, ColorSpace::RGB, std::move(data));
}

struct JpegErrorManager {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

[[noreturn]] void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

// Corrupt-data warnings (truncation included) are promoted to errors.
void jpeg_emit_message(j_common_ptr cinfo, int msg_level) {
    if (msg_level < 0)
        jpeg_error_exit(cinfo);
}

RasterImage decode_jpeg(std::span<const std::uint8_t> bytes) {
    jpeg_decompress_struct cinfo{};
    JpegErrorManager err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    err.pub.emit_message = jpeg_emit_message;

    int w = 0;
    int h = 0;
    std::vector<std::uint8_t> buf;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw Error(ErrorCode::DecodeError, std::string("jpeg: ") + err.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    w = static_cast<int>(cinfo.output_width);
    h = static_cast<int>(cinfo.output_height);
    buf.resize(static_cast<std::size_t>(w) * h * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = buf.data() + static_cast<std::size_t>(cinfo.output_scanline) * w * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);

    std::vector<double> data(buf.size());
    std::transform(buf.begin(), buf.end(), data.begin(), [](std::uint8_t v) { return v / 255.0; });
    return RasterImage(w, h, ColorSpace::RGB, std::move(data));
}

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

std::vector<std::uint8_t> write_png(const std::vector<std::uint8_t>& pixels, int w, int h,
                                    bool gray) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(w);
    image.height = static_cast<png_uint_32>(h);
    image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&image, nullptr, &size, 0, pixels.data(), 0, nullptr))
        throw Error(ErrorCode::IoError, std::string("png encode: ") + image.message);
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels.data(), 0, nullptr))
        throw Error(ErrorCode::IoError, std::string("png encode: ") + image.message);
    out.resize(size);
    return out;
}

} // namespace

RasterImage decode_image(std::span<const std::uint8_t> bytes) {
    if (is_png(bytes))
        return decode_png(bytes);
    if (is_jpeg(bytes))
        return decode_jpeg(bytes);
    throw Error(ErrorCode::DecodeError, "unrecognized image format");
}

RasterImage read_image(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return decode_image(bytes);
}

std::vector<std::uint8_t> encode_png(const RasterImage& img) {
    if (img.colorspace() != ColorSpace::RGB && img.colorspace() != ColorSpace::Gray)
        throw Error(ErrorCode::UnsupportedConversion, "png encoding needs RGB or Gray");
    std::vector<std::uint8_t> px(img.data().size());
    std::transform(img.data().begin(), img.data().end(), px.begin(), to_byte);
    return write_png(px, img.width(), img.height(), img.channels() == 1);
}

std::vector<std::uint8_t> encode_png(const Plane& plane, double lo, double hi) {
    const double span = hi > lo ? hi - lo : 1.0;
    std::vector<std::uint8_t> px(plane.size());
    std::transform(plane.data.begin(), plane.data.end(), px.begin(),
                   [&](double v) { return to_byte((v - lo) / span); });
    return write_png(px, plane.width, plane.height, true);
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw Error(ErrorCode::IoError, "short write to " + path.string());
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

} // namespace imgq
