#include "imgq/texture_dof.hpp"

#include "imgq/error.hpp"
#include "imgq/imgcore.hpp"
#include "imgq/pyramid.hpp"

#include <cmath>

namespace imgq {

namespace {

void require_extent(const RasterImage& img, int min_extent, const char* what) {
    if (img.width() < min_extent || img.height() < min_extent)
        throw Error(ErrorCode::TooSmall, std::string(what) + " needs at least " +
                                             std::to_string(min_extent) + "x" +
                                             std::to_string(min_extent));
}

double mean_square(const Plane& p) {
    double s = 0.0;
    for (double v : p.data)
        s += v * v;
    return s / static_cast<double>(p.size());
}

} // namespace

std::vector<int> grid_boundaries(int extent, int n) {
    std::vector<int> b(n + 1);
    for (int k = 0; k <= n; ++k)
        b[k] = (2 * extent * k + n) / (2 * n);
    return b;
}

std::vector<unsigned char> lbp_codes(const Plane& gray) {
    static constexpr int dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    static constexpr int dy[8] = {0, -1, -1, -1, 0, 1, 1, 1};
    const int cw = gray.width - 2;
    const int ch = gray.height - 2;
    if (cw < 1 || ch < 1)
        throw Error(ErrorCode::TooSmall, "lbp needs at least 3x3");
    std::vector<unsigned char> codes(static_cast<std::size_t>(cw) * ch);
    for (int y = 1; y <= ch; ++y)
        for (int x = 1; x <= cw; ++x) {
            const double c = gray(x, y);
            unsigned code = 0;
            for (int b = 0; b < 8; ++b)
                if (gray(x + dx[b], y + dy[b]) >= c)
                    code |= 1u << b;
            codes[static_cast<std::size_t>(y - 1) * cw + (x - 1)] = static_cast<unsigned char>(code);
        }
    return codes;
}

LbpPyramidHistogram lbp_pyramid(const RasterImage& rgb) {
    require_extent(rgb, 8, "lbp_pyramid");
    const Plane gray = to_gray_plane(rgb);
    const auto codes = lbp_codes(gray);
    const int cw = gray.width - 2;
    const int ch = gray.height - 2;

    LbpPyramidHistogram out(kLbpDim, 0.0);
    std::size_t cell = 0;
    for (int grid : {2, 4}) {
        const auto bx = grid_boundaries(cw, grid);
        const auto by = grid_boundaries(ch, grid);
        for (int r = 0; r < grid; ++r)
            for (int c = 0; c < grid; ++c, ++cell) {
                double* hist = out.data() + cell * kLbpBins;
                long count = 0;
                for (int y = by[r]; y < by[r + 1]; ++y)
                    for (int x = bx[c]; x < bx[c + 1]; ++x) {
                        hist[codes[static_cast<std::size_t>(y) * cw + x]] += 1.0;
                        ++count;
                    }
                if (count > 0)
                    for (int b = 0; b < kLbpBins; ++b)
                        hist[b] /= static_cast<double>(count);
            }
    }
    return out;
}

namespace {

double finest_wavelet_mean_square(const Pyramid& pyr) {
    const auto& bands = pyr.levels[0].bands;
    double s = 0.0;
    for (const Plane& b : bands)
        for (double v : b.data)
            s += v * v;
    return s / (3.0 * static_cast<double>(bands[0].size()));
}

Plane wavelet_power(const Pyramid& pyr) {
    const auto& bands = pyr.levels[0].bands;
    Plane power(bands[0].width, bands[0].height);
    for (std::size_t i = 0; i < power.size(); ++i) {
        const double hl = bands[HL].data[i], lh = bands[LH].data[i], hh = bands[HH].data[i];
        power.data[i] = hl * hl + lh * lh + hh * hh;
    }
    return power;
}

Plane squared(Plane p) {
    for (double& v : p.data)
        v *= v;
    return p;
}

} // namespace

double wavelet_smoothness(const RasterImage& rgb) {
    require_extent(rgb, 8, "wavelet_smoothness");
    return finest_wavelet_mean_square(build_wavelet_pyramid(lightness_plane(rgb), 3));
}

double laplacian_smoothness(const RasterImage& rgb) {
    require_extent(rgb, 16, "laplacian_smoothness");
    const Pyramid pyr = build_laplacian_pyramid(lightness_plane(rgb), 3);
    return mean_square(pyr.band(1));
}

Plane wavelet_detail_power(const RasterImage& rgb) {
    return wavelet_power(build_wavelet_pyramid(lightness_plane(rgb), 1));
}

Plane laplacian_detail_power(const RasterImage& rgb) {
    return squared(build_laplacian_pyramid(lightness_plane(rgb), 1).band(0));
}

DetailFeatures detail_features(const Plane& lightness) {
    if (lightness.width < 16 || lightness.height < 16)
        throw Error(ErrorCode::TooSmall, "detail features need at least 16x16");
    const Pyramid wav = build_wavelet_pyramid(lightness, 3);
    const Pyramid lap = build_laplacian_pyramid(lightness, 3);
    const Plane lap_power = squared(lap.band(0));
    DetailFeatures f;
    f.wavelet_smoothness = finest_wavelet_mean_square(wav);
    f.laplacian_smoothness = mean_square(lap.band(1));
    f.dof_wavelet = center_ratio(wavelet_power(wav));
    f.dof_laplacian = center_ratio(lap_power);
    f.dof_spatial_spread = spatial_spread(lap_power);
    return f;
}

double center_ratio(const Plane& power) {
    const auto bx = grid_boundaries(power.width, 4);
    const auto by = grid_boundaries(power.height, 4);
    double center = 0.0;
    double total = 0.0;
    for (int y = 0; y < power.height; ++y)
        for (int x = 0; x < power.width; ++x) {
            const double v = power(x, y);
            total += v;
            if (x >= bx[1] && x < bx[3] && y >= by[1] && y < by[3])
                center += v;
        }
    return total > 0.0 ? center / total : 0.0;
}

double spatial_spread(const Plane& power) {
    double total = 0.0, row = 0.0, col = 0.0;
    for (int y = 0; y < power.height; ++y)
        for (int x = 0; x < power.width; ++x) {
            const double v = power(x, y);
            total += v;
            row += v * y;
            col += v * x;
        }
    if (!(total > 0.0))
        return 0.0;
    const double cr = row / total;
    const double cc = col / total;
    double s = 0.0;
    for (int y = 0; y < power.height; ++y)
        for (int x = 0; x < power.width; ++x)
            s += power(x, y) * std::hypot(y - cr, x - cc);
    return s / static_cast<double>(power.size());
}

double dof_wavelet(const RasterImage& rgb) {
    require_extent(rgb, 16, "dof_wavelet");
    return center_ratio(wavelet_detail_power(rgb));
}

double dof_laplacian(const RasterImage& rgb) {
    require_extent(rgb, 16, "dof_laplacian");
    return center_ratio(laplacian_detail_power(rgb));
}

double dof_spatial_spread(const RasterImage& rgb) {
    require_extent(rgb, 16, "dof_spatial_spread");
    return spatial_spread(laplacian_detail_power(rgb));
}

} // namespace imgq
