#pragma once

// Deliberately naive reference implementations used to cross-check the
// optimized library code.

#include "imgq/image.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace imgq::oracle {

/// O(N^2 M^2) forward DFT.
inline std::vector<std::complex<double>> naive_dft(const Plane& p) {
    const int w = p.width, h = p.height;
    std::vector<std::complex<double>> out(static_cast<std::size_t>(w) * h);
    for (int v = 0; v < h; ++v)
        for (int u = 0; u < w; ++u) {
            std::complex<double> acc = 0.0;
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const double angle = -2.0 * std::numbers::pi *
                                         (static_cast<double>(u * x) / w + static_cast<double>(v * y) / h);
                    acc += p(x, y) * std::polar(1.0, angle);
                }
            out[static_cast<std::size_t>(v) * w + u] = acc;
        }
    return out;
}

struct HaarBlock {
    double ll, hl, lh, hh;
};

/// Haar coefficients of [[a,b],[c,d]] written out by hand.
inline HaarBlock haar_2x2(double a, double b, double c, double d) {
    return {(a + b + c + d) / 2.0, (a - b + c - d) / 2.0, (a + b - c - d) / 2.0, (a - b - c + d) / 2.0};
}

/// LBP code of pixel (x,y) by walking the neighbors explicitly.
inline int lbp_code(const Plane& g, int x, int y) {
    // E, NE, N, NW, W, SW, S, SE with y pointing down.
    const int dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    const int dy[8] = {0, -1, -1, -1, 0, 1, 1, 1};
    int code = 0;
    for (int k = 0; k < 8; ++k)
        if (g(x + dx[k], y + dy[k]) >= g(x, y))
            code |= 1 << k;
    return code;
}

/// Spatial pyramid of LBP histograms by double loop over every cell.
inline std::vector<double> lbp_pyramid(const Plane& gray) {
    const int w = gray.width - 2, h = gray.height - 2;
    std::vector<double> out;
    for (int n : {2, 4})
        for (int cy = 0; cy < n; ++cy)
            for (int cx = 0; cx < n; ++cx) {
                const int x0 = static_cast<int>(std::floor(static_cast<double>(w) * cx / n + 0.5));
                const int x1 = static_cast<int>(std::floor(static_cast<double>(w) * (cx + 1) / n + 0.5));
                const int y0 = static_cast<int>(std::floor(static_cast<double>(h) * cy / n + 0.5));
                const int y1 = static_cast<int>(std::floor(static_cast<double>(h) * (cy + 1) / n + 0.5));
                std::vector<double> hist(256, 0.0);
                double count = 0.0;
                for (int y = y0; y < y1; ++y)
                    for (int x = x0; x < x1; ++x) {
                        hist[static_cast<std::size_t>(lbp_code(gray, x + 1, y + 1))] += 1.0;
                        count += 1.0;
                    }
                for (double& v : hist)
                    v = count > 0.0 ? v / count : 0.0;
                out.insert(out.end(), hist.begin(), hist.end());
            }
    return out;
}

/// Pairwise Mann-Whitney count: wins plus half ties over all pos/neg pairs.
inline double pairwise_auc(std::span<const double> s, std::span<const int> y) {
    double wins = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (y[i] == 0)
            continue;
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (y[j] != 0)
                continue;
            pairs += 1.0;
            if (s[i] > s[j])
                wins += 1.0;
            else if (s[i] == s[j])
                wins += 0.5;
        }
    }
    return wins / pairs;
}

/// Every contiguous window holding at least `fraction` of the mass; returns
/// the minimal width and all windows achieving it.
inline std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>
minimal_windows(std::span<const double> mass, double fraction) {
    double total = 0.0;
    for (double m : mass)
        total += m;
    const double need = fraction * total * (1.0 - 1e-12);
    std::size_t best = mass.size() + 1;
    std::vector<std::pair<std::size_t, std::size_t>> found;
    for (std::size_t a = 0; a < mass.size(); ++a) {
        double acc = 0.0;
        for (std::size_t b = a; b < mass.size(); ++b) {
            acc += mass[b];
            if (acc >= need) {
                const std::size_t width = b - a + 1;
                if (width < best) {
                    best = width;
                    found.clear();
                }
                if (width == best)
                    found.emplace_back(a, b);
                break;
            }
        }
    }
    return {best, found};
}

} // namespace imgq::oracle
