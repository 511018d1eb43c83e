#pragma once

#include "imgq/image.hpp"

#include <array>
#include <vector>

namespace imgq {

/// Saliency in [0,1], max-normalized, same extent as the source image.
struct SaliencyMap {
    Plane values;
};

/// Mean saliency over the 5x5 composition grid, row-major.
using ThirdsMap = std::array<double, 25>;

struct SaliencyConfig {
    int working_size = 64;
    double smoothing_sigma = 2.5;
};

SaliencyMap spectral_residual_saliency(const RasterImage& rgb, const SaliencyConfig& cfg = {});

/// Pixel boundaries of the five composition bands along an axis of length n:
/// round(n * {0, 1/4, 5/12, 7/12, 3/4, 1}), halves rounded up.
std::array<int, 6> thirds_boundaries(int n);

ThirdsMap thirds_map(const SaliencyMap& sal);

struct MserConfig {
    int delta = 5;
    double min_area = 0.0001; // fraction of image area
    double max_area = 0.25;
    double max_variation = 0.25;
    double min_diversity = 0.2;
};

/// Number of maximally stable extremal regions on the 8-bit gray image,
/// counting dark-on-bright and bright-on-dark regions.
int mser_count(const RasterImage& rgb, const MserConfig& cfg = {});

/// Stable regions of one polarity (dark regions: components of {v <= level})
/// on an 8-bit plane of width*height levels.
int mser_count_dark(const std::vector<unsigned char>& levels, int width, int height,
                    const MserConfig& cfg = {});

} // namespace imgq
