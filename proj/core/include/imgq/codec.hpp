#pragma once

#include "imgq/image.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace imgq {

/// Decode PNG or JPEG bytes into an RGB image with samples in [0,1].
/// Grayscale and palette PNGs are expanded to RGB; alpha is dropped.
RasterImage decode_image(std::span<const std::uint8_t> bytes);

RasterImage read_image(const std::filesystem::path& path);

/// 8-bit PNG encoding. Gray images become single-channel PNGs, RGB three-channel.
/// Samples are clamped to [0,1] and rounded to the nearest level.
std::vector<std::uint8_t> encode_png(const RasterImage& img);

/// Encodes a plane as grayscale, mapping [lo,hi] linearly onto [0,255].
std::vector<std::uint8_t> encode_png(const Plane& plane, double lo, double hi);

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

} // namespace imgq
