#pragma once

#include "imgq/image.hpp"

#include <optional>

namespace imgq {

struct BlurConfig {
    /// Absolute spectral threshold. When unset, the threshold is
    /// relative_theta times the mean non-DC magnitude of the input.
    std::optional<double> theta;
    double relative_theta = 2.0;
    /// Tong edge threshold on [0,1]-scaled, scale-normalized undecimated Haar
    /// details, pooled over 16x16 pixel windows.
    double edge_threshold = 35.0 / 255.0;
};

/// The threshold blur_frequency would use for this image under `cfg`.
double blur_theta(const RasterImage& rgb, const BlurConfig& cfg = {});

/// Fraction of DFT coefficients whose magnitude exceeds theta. Higher is sharper.
double blur_frequency(const RasterImage& rgb, const BlurConfig& cfg = {});

struct EdgeStructureCounts {
    long n_edges = 0;
    long n_dirac_astep = 0;
    long n_gstep_roof = 0;
    long n_blurred_gstep_roof = 0;
};

EdgeStructureCounts edge_structure_counts(const RasterImage& rgb, const BlurConfig& cfg = {});

/// Share of gradual (G-step/roof) edges that lost their finest-scale
/// response. Requires at least 8x8.
double blur_edge_structure(const RasterImage& rgb, const BlurConfig& cfg = {});

} // namespace imgq
