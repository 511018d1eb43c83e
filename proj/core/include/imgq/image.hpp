#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace imgq {

enum class ColorSpace { RGB, Gray, HSV, Lab };

const char* to_string(ColorSpace cs) noexcept;

/// Single-channel real-valued raster. Used for filter responses, pyramid
/// bands and spectra, none of which obey a color-space range.
struct Plane {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Plane() = default;
    Plane(int w, int h, double fill = 0.0);
    Plane(int w, int h, std::vector<double> values);

    double& operator()(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double operator()(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    /// Edge-replicated read.
    double clamped(int x, int y) const;

    std::size_t size() const noexcept { return data.size(); }
    bool empty() const noexcept { return data.empty(); }
    double sum() const;
    double max() const;
};

/// Decoded image, interleaved row-major samples.
///
/// RGB and Gray samples are in [0,1]; HSV holds H in [0,360) and S,V in
/// [0,1]; Lab holds L in [0,100] with a and b unbounded in practice.
class RasterImage {
public:
    RasterImage() = default;
    RasterImage(int width, int height, ColorSpace cs);
    RasterImage(int width, int height, ColorSpace cs, std::vector<double> data);

    static RasterImage from_plane(const Plane& p, ColorSpace cs = ColorSpace::Gray);
    static RasterImage from_planes(std::span<const Plane> planes, ColorSpace cs);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    ColorSpace colorspace() const noexcept { return cs_; }
    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    double at(int x, int y, int c = 0) const {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }
    double& at(int x, int y, int c = 0) {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }

    Plane channel(int c) const;

    /// Throws InvalidArgument when a sample falls outside the colorspace range.
    void validate() const;

    bool operator==(const RasterImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    ColorSpace cs_ = ColorSpace::RGB;
    std::vector<double> data_;
};

int channel_count(ColorSpace cs) noexcept;

} // namespace imgq
