#include "imgq/blur.hpp"

#include "imgq/error.hpp"
#include "imgq/imgcore.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace imgq {

namespace {

constexpr int kTongLevels = 3;
// Pooling window in source pixels, shared by all levels.
constexpr int kTongWindow = 16;

// One level of the undecimated Haar transform with tap spacing `step`,
// restricted to tap squares that lie inside `approx`. Produces the next
// approximation and the largest detail magnitude per position.
void stationary_haar_level(const Plane& approx, int step, Plane& next, Plane& detail) {
    const int w = std::max(approx.width - step, 0);
    const int h = std::max(approx.height - step, 0);
    next = Plane(w, h);
    detail = Plane(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double a = approx(x, y), b = approx(x + step, y);
            const double c = approx(x, y + step), d = approx(x + step, y + step);
            next(x, y) = (a + b + c + d) / 2.0;
            detail(x, y) = std::max({std::abs(a - b + c - d), std::abs(a + b - c - d),
                                     std::abs(a - b - c + d)}) / 2.0;
        }
}

double relative_theta(const Plane& mag, double multiplier) {
    double s = 0.0;
    for (std::size_t i = 1; i < mag.size(); ++i)
        s += mag.data[i];
    const double mean = mag.size() > 1 ? s / static_cast<double>(mag.size() - 1) : 0.0;
    // Floating-point residue on flat images must not count as content.
    return std::max(multiplier * mean, 1e-9 * mag.data[0]);
}

double theta_for(const Plane& mag, const BlurConfig& cfg) {
    if (cfg.theta) {
        if (!(*cfg.theta > 0.0))
            throw Error(ErrorCode::InvalidArgument, "theta must be positive");
        return *cfg.theta;
    }
    return relative_theta(mag, cfg.relative_theta);
}

} // namespace

double blur_theta(const RasterImage& rgb, const BlurConfig& cfg) {
    return theta_for(fft2_magnitude(to_gray_plane(rgb)), cfg);
}

double blur_frequency(const RasterImage& rgb, const BlurConfig& cfg) {
    const Plane mag = fft2_magnitude(to_gray_plane(rgb));
    const double theta = theta_for(mag, cfg);
    const auto above = std::count_if(mag.data.begin(), mag.data.end(),
                                     [&](double m) { return m > theta; });
    return static_cast<double>(above) / static_cast<double>(mag.size());
}

EdgeStructureCounts edge_structure_counts(const RasterImage& rgb, const BlurConfig& cfg) {
    if (rgb.width() < 8 || rgb.height() < 8)
        throw Error(ErrorCode::TooSmall, "edge structure blur needs at least 8x8");
    // The undecimated transform keeps the response of a step independent of
    // its alignment to the dyadic grid. Orthonormal Haar gains a factor 2 per
    // level on smooth content; dividing by 2^k keeps a sharp step at equal
    // amplitude across scales while a ramp rises. A level-k coefficient feeds
    // every window within W/2 - 2^k pixels of its footprint center, so a
    // single edge reaches the same windows at all three levels.
    Plane approx = to_gray_plane(rgb);
    const int nx = (approx.width + kTongWindow - 1) / kTongWindow;
    const int ny = (approx.height + kTongWindow - 1) / kTongWindow;
    std::vector<std::vector<double>> emax(kTongLevels, std::vector<double>(std::size_t(nx) * ny, 0.0));
    // Window range in doubled coordinates, where footprint centers are integers.
    auto windows = [](int twice_center, int twice_radius, int n) {
        const int lo = std::max(0, twice_center - twice_radius) / (2 * kTongWindow);
        const int hi = std::max(0, twice_center + twice_radius) / (2 * kTongWindow);
        return std::pair{std::min(lo, n - 1), std::min(hi, n - 1)};
    };
    Plane next, detail;
    for (int k = 0; k < kTongLevels; ++k) {
        stationary_haar_level(approx, 1 << k, next, detail);
        const double scale = 1.0 / static_cast<double>(1 << k);
        const int span = (2 << k) - 1;
        const int twice_radius = kTongWindow - (2 << k);
        for (int y = 0; y < detail.height; ++y) {
            const auto [wy0, wy1] = windows(2 * y + span, twice_radius, ny);
            for (int x = 0; x < detail.width; ++x) {
                const auto [wx0, wx1] = windows(2 * x + span, twice_radius, nx);
                const double e = scale * detail(x, y);
                for (int wy = wy0; wy <= wy1; ++wy)
                    for (int wx = wx0; wx <= wx1; ++wx) {
                        double& slot = emax[k][static_cast<std::size_t>(wy) * nx + wx];
                        slot = std::max(slot, e);
                    }
            }
        }
        approx = std::move(next);
    }

    const double t = cfg.edge_threshold;
    EdgeStructureCounts counts;
    for (std::size_t i = 0; i < emax[0].size(); ++i) {
        const double e1 = emax[0][i], e2 = emax[1][i], e3 = emax[2][i];
        if (!(e1 > t || e2 > t || e3 > t))
            continue;
        ++counts.n_edges;
        if (e1 > e2 && e2 > e3) {
            ++counts.n_dirac_astep;
        } else if ((e1 < e2 && e2 < e3) || (e2 > e1 && e2 > e3)) {
            ++counts.n_gstep_roof;
            if (e1 < t)
                ++counts.n_blurred_gstep_roof;
        }
    }
    return counts;
}

double blur_edge_structure(const RasterImage& rgb, const BlurConfig& cfg) {
    const EdgeStructureCounts c = edge_structure_counts(rgb, cfg);
    return static_cast<double>(c.n_blurred_gstep_roof) /
           static_cast<double>(std::max(1L, c.n_gstep_roof));
}

} // namespace imgq
