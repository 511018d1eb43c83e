#pragma once

#include "imgq/image.hpp"

#include <vector>

namespace imgq {

enum class PyramidKind { Laplacian, Wavelet };

/// One scale of a pyramid.
///
/// Laplacian: bands = {L}, approximation = the low-pass plane handed to
/// the next level. Wavelet: bands = {HL, LH, HH}, approximation = LL.
/// input_width/height record the plane this level decomposed, which the
/// inverse needs to undo ceil-halving on odd extents.
struct PyramidLevel {
    std::vector<Plane> bands;
    Plane approximation;
    int input_width = 0;
    int input_height = 0;
};

enum WaveletBand { HL = 0, LH = 1, HH = 2 };

/// levels[0] is the finest scale ("bottom" of the pyramid).
struct Pyramid {
    PyramidKind kind = PyramidKind::Laplacian;
    std::vector<PyramidLevel> levels;

    const Plane& band(int level, int b = 0) const { return levels.at(level).bands.at(b); }
};

/// Burt-Adelson Laplacian pyramid with a 5-tap binomial kernel. Produces
/// `levels` band-pass planes; each dimension must be at least 2^levels.
Pyramid build_laplacian_pyramid(const Plane& img, int levels);

/// Inverse of build_laplacian_pyramid.
Plane collapse(const Pyramid& pyr);

/// Orthonormal 2-D Haar (db1) transform. For a 2x2 block [[a,b],[c,d]]:
/// LL=(a+b+c+d)/2, HL=(a-b+c-d)/2, LH=(a+b-c-d)/2, HH=(a-b-c+d)/2.
/// HL responds to vertical edges, LH to horizontal ones. Odd extents are
/// padded by edge replication.
Pyramid build_wavelet_pyramid(const Plane& img, int levels);

/// Inverse Haar transform back to the original extent.
Plane inverse_wavelet(const Pyramid& pyr);

/// 5-tap binomial smoothing followed by taking even samples.
Plane pyramid_reduce(const Plane& p);
/// Upsample to (w,h) by zero insertion and 4x binomial interpolation.
Plane pyramid_expand(const Plane& p, int w, int h);

} // namespace imgq
