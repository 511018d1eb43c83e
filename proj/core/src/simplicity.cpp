#include "imgq/simplicity.hpp"

#include "imgq/error.hpp"
#include "imgq/imgcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace imgq {

namespace {

constexpr int kEdgeGrid = 100;
constexpr int kHueBins = 20;

} // namespace

int to_level(double v) noexcept {
    return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

MassWindow central_mass_window(std::span<const double> mass, double fraction) {
    const std::size_t n = mass.size();
    if (n == 0)
        throw Error(ErrorCode::EmptyInput, "mass window over empty distribution");
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] + mass[i];
    const double total = prefix[n];
    if (!(total > 0.0))
        throw Error(ErrorCode::DegenerateImage, "mass window over zero mass");
    // Relative slack absorbs summation rounding on exact-fraction inputs.
    const double target = fraction * total * (1.0 - 1e-12);

    std::size_t median = 0;
    while (median + 1 < n && prefix[median + 1] < 0.5 * total)
        ++median;

    std::size_t best_width = std::numeric_limits<std::size_t>::max();
    MassWindow best;
    double best_offset = std::numeric_limits<double>::infinity();
    std::size_t r = 0;
    for (std::size_t l = 0; l < n; ++l) {
        r = std::max(r, l);
        while (r < n && prefix[r + 1] - prefix[l] < target)
            ++r;
        if (r == n)
            break;
        const std::size_t width = r - l + 1;
        const double offset = std::abs(0.5 * static_cast<double>(l + r) - static_cast<double>(median));
        if (width < best_width || (width == best_width && offset < best_offset)) {
            best_width = width;
            best_offset = offset;
            best = {l, r};
        }
    }
    return best;
}

EdgeProjection project_edges(const Plane& edge_mass) {
    EdgeProjection proj;
    const double total = edge_mass.sum();
    if (!(total > 0.0))
        return proj;
    proj.px.assign(edge_mass.width, 0.0);
    proj.py.assign(edge_mass.height, 0.0);
    for (int y = 0; y < edge_mass.height; ++y)
        for (int x = 0; x < edge_mass.width; ++x) {
            const double v = edge_mass(x, y) / total;
            proj.px[x] += v;
            proj.py[y] += v;
        }
    proj.wx = central_mass_window(proj.px).width();
    proj.wy = central_mass_window(proj.py).width();
    return proj;
}

double spatial_edge_distribution(const RasterImage& rgb, DegeneratePolicy policy) {
    if (rgb.colorspace() != ColorSpace::RGB)
        throw Error(ErrorCode::InvalidArgument, "spatial_edge_distribution needs RGB");
    const Plane lap = resize(laplacian_3x3(rgb), kEdgeGrid, kEdgeGrid);
    const EdgeProjection proj = project_edges(lap);
    if (proj.wx == 0) {
        if (policy == DegeneratePolicy::Strict)
            throw Error(ErrorCode::DegenerateImage, "laplacian response is identically zero");
        return 0.0;
    }
    return 1.0 - static_cast<double>(proj.wx * proj.wy) / (kEdgeGrid * kEdgeGrid);
}

double hue_count(const RasterImage& rgb, double alpha) {
    const RasterImage hsv = convert_colorspace(rgb, ColorSpace::HSV);
    Histogram hist(kHueBins, 0.0, 360.0);
    const auto d = hsv.data();
    for (std::size_t i = 0; i + 2 < d.size(); i += 3) {
        const double h = d[i], s = d[i + 1], v = d[i + 2];
        if (v >= 0.15 && v <= 0.95 && s > 0.2)
            hist.add(h);
    }
    const double m = *std::max_element(hist.bins.begin(), hist.bins.end());
    if (m == 0.0)
        return kHueBins;
    const auto occupied = std::count_if(hist.bins.begin(), hist.bins.end(),
                                        [&](double b) { return b > alpha * m; });
    return static_cast<double>(kHueBins - occupied);
}

double contrast(const RasterImage& rgb) {
    if (rgb.colorspace() != ColorSpace::RGB)
        throw Error(ErrorCode::InvalidArgument, "contrast needs RGB");
    std::vector<double> hist(256, 0.0);
    for (double v : rgb.data())
        hist[to_level(v)] += 1.0;
    return static_cast<double>(central_mass_window(hist).width()) / 256.0;
}

double brightness(const RasterImage& rgb) {
    const Plane l = lightness_plane(rgb);
    return l.sum() / static_cast<double>(l.size());
}

} // namespace imgq
