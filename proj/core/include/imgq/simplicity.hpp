#pragma once

#include "imgq/image.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace imgq {

/// Contiguous bin window [first, last] (inclusive).
struct MassWindow {
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t width() const noexcept { return last - first + 1; }
};

/// Smallest contiguous window holding at least `fraction` of the total mass.
/// Among equally narrow windows the one whose midpoint sits closest to the
/// mass median wins (then the leftmost). Total mass must be positive.
MassWindow central_mass_window(std::span<const double> mass, double fraction = 0.98);

struct EdgeProjection {
    std::vector<double> px; // column masses, sums to 1
    std::vector<double> py; // row masses, sums to 1
    std::size_t wx = 0;
    std::size_t wy = 0;
};

/// Projection of a non-negative edge-mass plane onto both axes. A plane
/// without mass gives empty projections and wx = wy = 0.
EdgeProjection project_edges(const Plane& edge_mass);

enum class DegeneratePolicy { Lenient, Strict };

/// Area fraction outside the 98% edge window: 1 - wx*wy/100^2. A blank
/// Laplacian response yields 0, or DegenerateImage under Strict.
double spatial_edge_distribution(const RasterImage& rgb,
                                 DegeneratePolicy policy = DegeneratePolicy::Lenient);

double hue_count(const RasterImage& rgb, double alpha = 0.05);

/// Width of the central 98% of the summed R,G,B level histogram, over 256.
double contrast(const RasterImage& rgb);

/// Mean Lab lightness in [0,100].
double brightness(const RasterImage& rgb);

/// 8-bit level of a [0,1] sample.
int to_level(double v) noexcept;

} // namespace imgq
