#include "imgq/pyramid.hpp"

#include "imgq/error.hpp"

#include <algorithm>
#include <array>

namespace imgq {

namespace {

constexpr std::array<double, 5> kBinomial = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

int half_up(int n) { return (n + 1) / 2; }

// Expansion along one axis: out[i] = 2 * sum_m w[m] * in[(i - m) / 2] over
// the taps where i - m is even. Coarse indices are clamped.
std::vector<double> expand_1d(const std::vector<double>& in, int n_out) {
    const int n_in = static_cast<int>(in.size());
    std::vector<double> out(n_out, 0.0);
    for (int i = 0; i < n_out; ++i) {
        double s = 0.0;
        for (int m = -2; m <= 2; ++m) {
            const int j = i - m;
            if (j % 2 != 0)
                continue;
            s += kBinomial[m + 2] * in[std::clamp(j / 2, 0, n_in - 1)];
        }
        out[i] = 2.0 * s;
    }
    return out;
}

} // namespace

Plane pyramid_reduce(const Plane& p) {
    const int w2 = half_up(p.width);
    const int h2 = half_up(p.height);
    // Horizontal pass only at even columns, then vertical pass at even rows.
    Plane tmp(w2, p.height);
    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < w2; ++x) {
            double s = 0.0;
            for (int k = -2; k <= 2; ++k)
                s += kBinomial[k + 2] * p.clamped(2 * x + k, y);
            tmp(x, y) = s;
        }
    Plane out(w2, h2);
    for (int y = 0; y < h2; ++y)
        for (int x = 0; x < w2; ++x) {
            double s = 0.0;
            for (int k = -2; k <= 2; ++k)
                s += kBinomial[k + 2] * tmp.clamped(x, 2 * y + k);
            out(x, y) = s;
        }
    return out;
}

Plane pyramid_expand(const Plane& p, int w, int h) {
    Plane tmp(w, p.height);
    std::vector<double> row(p.width);
    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x)
            row[x] = p(x, y);
        const auto ex = expand_1d(row, w);
        for (int x = 0; x < w; ++x)
            tmp(x, y) = ex[x];
    }
    Plane out(w, h);
    std::vector<double> col(p.height);
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < p.height; ++y)
            col[y] = tmp(x, y);
        const auto ex = expand_1d(col, h);
        for (int y = 0; y < h; ++y)
            out(x, y) = ex[y];
    }
    return out;
}

Pyramid build_laplacian_pyramid(const Plane& img, int levels) {
    if (levels < 1)
        throw Error(ErrorCode::InvalidArgument, "laplacian pyramid needs at least one level");
    if (img.width < (1 << levels) || img.height < (1 << levels))
        throw Error(ErrorCode::TooSmall, "image too small for " + std::to_string(levels) +
                                             "-level laplacian pyramid");
    Pyramid pyr;
    pyr.kind = PyramidKind::Laplacian;
    Plane current = img;
    for (int k = 0; k < levels; ++k) {
        PyramidLevel level;
        level.input_width = current.width;
        level.input_height = current.height;
        level.approximation = pyramid_reduce(current);
        Plane band = pyramid_expand(level.approximation, current.width, current.height);
        for (std::size_t i = 0; i < band.size(); ++i)
            band.data[i] = current.data[i] - band.data[i];
        level.bands.push_back(std::move(band));
        current = level.approximation;
        pyr.levels.push_back(std::move(level));
    }
    return pyr;
}

Plane collapse(const Pyramid& pyr) {
    if (pyr.kind != PyramidKind::Laplacian || pyr.levels.empty())
        throw Error(ErrorCode::InvalidArgument, "collapse needs a non-empty laplacian pyramid");
    Plane current = pyr.levels.back().approximation;
    for (auto it = pyr.levels.rbegin(); it != pyr.levels.rend(); ++it) {
        const Plane& band = it->bands.at(0);
        Plane up = pyramid_expand(current, band.width, band.height);
        for (std::size_t i = 0; i < up.size(); ++i)
            up.data[i] += band.data[i];
        current = std::move(up);
    }
    return current;
}

Pyramid build_wavelet_pyramid(const Plane& img, int levels) {
    if (levels < 1)
        throw Error(ErrorCode::InvalidArgument, "wavelet pyramid needs at least one level");
    if (img.width < (1 << levels) || img.height < (1 << levels))
        throw Error(ErrorCode::TooSmall, "image too small for " + std::to_string(levels) +
                                             "-level wavelet transform");
    Pyramid pyr;
    pyr.kind = PyramidKind::Wavelet;
    Plane current = img;
    for (int k = 0; k < levels; ++k) {
        const int w2 = half_up(current.width);
        const int h2 = half_up(current.height);
        PyramidLevel level;
        level.input_width = current.width;
        level.input_height = current.height;
        Plane ll(w2, h2), hl(w2, h2), lh(w2, h2), hh(w2, h2);
        for (int y = 0; y < h2; ++y)
            for (int x = 0; x < w2; ++x) {
                const double a = current.clamped(2 * x, 2 * y);
                const double b = current.clamped(2 * x + 1, 2 * y);
                const double c = current.clamped(2 * x, 2 * y + 1);
                const double d = current.clamped(2 * x + 1, 2 * y + 1);
                ll(x, y) = (a + b + c + d) / 2.0;
                hl(x, y) = (a - b + c - d) / 2.0;
                lh(x, y) = (a + b - c - d) / 2.0;
                hh(x, y) = (a - b - c + d) / 2.0;
            }
        level.bands = {std::move(hl), std::move(lh), std::move(hh)};
        level.approximation = std::move(ll);
        current = level.approximation;
        pyr.levels.push_back(std::move(level));
    }
    return pyr;
}

Plane inverse_wavelet(const Pyramid& pyr) {
    if (pyr.kind != PyramidKind::Wavelet || pyr.levels.empty())
        throw Error(ErrorCode::InvalidArgument, "inverse_wavelet needs a non-empty wavelet pyramid");
    Plane ll = pyr.levels.back().approximation;
    for (auto it = pyr.levels.rbegin(); it != pyr.levels.rend(); ++it) {
        const Plane& hl = it->bands.at(HL);
        const Plane& lh = it->bands.at(LH);
        const Plane& hh = it->bands.at(HH);
        Plane out(it->input_width, it->input_height);
        for (int y = 0; y < ll.height; ++y)
            for (int x = 0; x < ll.width; ++x) {
                const double s = ll(x, y), p = hl(x, y), q = lh(x, y), r = hh(x, y);
                const double vals[4] = {(s + p + q + r) / 2.0, (s - p + q - r) / 2.0,
                                        (s + p - q - r) / 2.0, (s - p - q + r) / 2.0};
                for (int k = 0; k < 4; ++k) {
                    const int ox = 2 * x + (k & 1);
                    const int oy = 2 * y + (k >> 1);
                    if (ox < out.width && oy < out.height)
                        out(ox, oy) = vals[k];
                }
            }
        ll = std::move(out);
    }
    return ll;
}

} // namespace imgq
