#pragma once

#include "imgq/image.hpp"

#include <array>
#include <vector>

namespace imgq {

inline constexpr int kLbpBins = 256;
inline constexpr int kLbpCells = 20;
inline constexpr int kLbpDim = kLbpBins * kLbpCells;

/// 20 L1-normalized 256-bin histograms: the 2x2 grid then the 4x4 grid,
/// each row-major.
using LbpPyramidHistogram = std::vector<double>;

/// Cell boundaries of an n-way split of `extent`: round(extent*k/n).
std::vector<int> grid_boundaries(int extent, int n);

/// Radius-1, 8-neighbor LBP codes of the interior pixels, (w-2)x(h-2).
/// Bit 0 is the east neighbor and bits proceed counter-clockwise;
/// neighbor >= center sets the bit.
std::vector<unsigned char> lbp_codes(const Plane& gray);

LbpPyramidHistogram lbp_pyramid(const RasterImage& rgb);

double wavelet_smoothness(const RasterImage& rgb);
double laplacian_smoothness(const RasterImage& rgb);

/// Finest Haar detail power, HL^2 + LH^2 + HH^2 per location, on Lab L.
Plane wavelet_detail_power(const RasterImage& rgb);
/// Squared finest Laplacian band of Lab L.
Plane laplacian_detail_power(const RasterImage& rgb);

/// Share of power inside the four central cells of a 4x4 grid; 0 if empty.
double center_ratio(const Plane& power);

/// Power-weighted mean distance to the power centroid, divided by the
/// plane area; 0 if empty.
double spatial_spread(const Plane& power);

double dof_wavelet(const RasterImage& rgb);
double dof_laplacian(const RasterImage& rgb);
double dof_spatial_spread(const RasterImage& rgb);

struct DetailFeatures {
    double wavelet_smoothness = 0.0;
    double laplacian_smoothness = 0.0;
    double dof_wavelet = 0.0;
    double dof_laplacian = 0.0;
    double dof_spatial_spread = 0.0;
};

/// All pyramid-based features from one Lab L plane, sharing the pyramids.
/// Matches the per-feature functions above.
DetailFeatures detail_features(const Plane& lightness);

} // namespace imgq
