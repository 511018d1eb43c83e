#pragma once

#include "imgq/image.hpp"

#include <complex>
#include <vector>

namespace imgq {

// Color conversion. Only RGB sources are accepted; anything else raises
// UnsupportedConversion. Lab uses sRGB primaries with a D65 white point,
// Gray uses Rec. 601 luma weights.
RasterImage convert_colorspace(const RasterImage& img, ColorSpace target);

Plane to_gray_plane(const RasterImage& img);
Plane lightness_plane(const RasterImage& img);

/// |8-connected Laplacian| (center 8, ring -1) per channel, averaged across
/// channels. Borders are edge-replicated.
Plane laplacian_3x3(const RasterImage& img);
Plane laplacian_3x3(const Plane& plane);

/// Normalized 1-D Gaussian taps of radius ceil(3 sigma).
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian blur with edge replication, applied per channel.
RasterImage gaussian_blur(const RasterImage& img, double sigma);
Plane gaussian_blur(const Plane& plane, double sigma);

/// Bilinear resampling with pixel-center alignment and clamped borders.
RasterImage resize(const RasterImage& img, int width, int height);
Plane resize(const Plane& plane, int width, int height);

/// 3x3 mean filter, edge-replicated.
Plane box_filter_3x3(const Plane& plane);

using ComplexPlane = std::vector<std::complex<double>>;

/// Unnormalized forward 2-D DFT of a real plane, row-major, DC at index 0.
ComplexPlane fft2(const Plane& plane);

/// Inverse 2-D DFT including the 1/(MN) factor.
ComplexPlane ifft2(const ComplexPlane& spectrum, int width, int height);

Plane fft2_magnitude(const Plane& gray);
Plane fft2_magnitude(const RasterImage& gray);

struct Histogram {
    std::vector<double> bins;
    double lo = 0.0;
    double hi = 1.0;
    bool normalized = false;

    Histogram() = default;
    Histogram(std::size_t n, double lo_, double hi_) : bins(n, 0.0), lo(lo_), hi(hi_) {}

    /// Bin for v in [lo,hi); values at or beyond hi land in the last bin.
    std::size_t bin_of(double v) const;
    void add(double v, double weight = 1.0) { bins[bin_of(v)] += weight; }
    double total() const;
    /// Scales bins to unit mass. An empty histogram stays all-zero.
    void normalize();
};

} // namespace imgq
