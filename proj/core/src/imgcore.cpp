#include "imgq/imgcore.hpp"

#include "imgq/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace imgq {

namespace {

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
    constexpr double delta = 6.0 / 29.0;
    return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

// D65 reference white.
constexpr double kXn = 0.95047;
constexpr double kYn = 1.0;
constexpr double kZn = 1.08883;

void rgb_to_lab(double r, double g, double b, double* out) {
    const double rl = srgb_to_linear(r);
    const double gl = srgb_to_linear(g);
    const double bl = srgb_to_linear(b);
    const double x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
    const double y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
    const double z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;
    const double fx = lab_f(x / kXn);
    const double fy = lab_f(y / kYn);
    const double fz = lab_f(z / kZn);
    out[0] = std::clamp(116.0 * fy - 16.0, 0.0, 100.0);
    out[1] = 500.0 * (fx - fy);
    out[2] = 200.0 * (fy - fz);
}

void rgb_to_hsv(double r, double g, double b, double* out) {
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double d = mx - mn;
    double h = 0.0;
    if (d > 0.0) {
        if (mx == r)
            h = 60.0 * std::fmod((g - b) / d, 6.0);
        else if (mx == g)
            h = 60.0 * ((b - r) / d + 2.0);
        else
            h = 60.0 * ((r - g) / d + 4.0);
        if (h < 0.0)
            h += 360.0;
        if (h >= 360.0)
            h -= 360.0;
    }
    out[0] = h;
    out[1] = mx > 0.0 ? d / mx : 0.0;
    out[2] = mx;
}

double luma(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

void require_rgb(const RasterImage& img, const char* what) {
    if (img.colorspace() != ColorSpace::RGB)
        throw Error(ErrorCode::UnsupportedConversion,
                    std::string(what) + " needs RGB input, got " + to_string(img.colorspace()));
}

// Separable 1-D convolution along rows (horizontal) or columns, edge-replicated.
Plane convolve_rows(const Plane& p, const std::vector<double>& taps) {
    const int r = static_cast<int>(taps.size() / 2);
    Plane out(p.width, p.height);
    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < p.width; ++x) {
            double s = 0.0;
            for (int k = -r; k <= r; ++k)
                s += taps[k + r] * p.clamped(x + k, y);
            out(x, y) = s;
        }
    return out;
}

Plane convolve_cols(const Plane& p, const std::vector<double>& taps) {
    const int r = static_cast<int>(taps.size() / 2);
    Plane out(p.width, p.height);
    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < p.width; ++x) {
            double s = 0.0;
            for (int k = -r; k <= r; ++k)
                s += taps[k + r] * p.clamped(x, y + k);
            out(x, y) = s;
        }
    return out;
}

// FFTW planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
public:
    fftw_plan get(int w, int h, int sign) {
        std::lock_guard lock(mu_);
        auto key = std::make_tuple(w, h, sign);
        auto it = plans_.find(key);
        if (it != plans_.end())
            return it->second;
        std::vector<fftw_complex> scratch(static_cast<std::size_t>(w) * h);
        fftw_plan plan = fftw_plan_dft_2d(h, w, scratch.data(), scratch.data(), sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [_, plan] : plans_)
            fftw_destroy_plan(plan);
    }

private:
    std::mutex mu_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

ComplexPlane run_dft(ComplexPlane data, int w, int h, int sign) {
    fftw_plan plan = plan_cache().get(w, h, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
    return data;
}

} // namespace

RasterImage convert_colorspace(const RasterImage& img, ColorSpace target) {
    require_rgb(img, "convert_colorspace");
    if (target == ColorSpace::RGB)
        return img;
    RasterImage out(img.width(), img.height(), target);
    const auto src = img.data();
    auto dst = out.data();
    const std::size_t n = static_cast<std::size_t>(img.width()) * img.height();
    for (std::size_t i = 0; i < n; ++i) {
        const double r = src[3 * i], g = src[3 * i + 1], b = src[3 * i + 2];
        switch (target) {
        case ColorSpace::Gray: dst[i] = luma(r, g, b); break;
        case ColorSpace::HSV: rgb_to_hsv(r, g, b, &dst[3 * i]); break;
        case ColorSpace::Lab: rgb_to_lab(r, g, b, &dst[3 * i]); break;
        case ColorSpace::RGB: break;
        }
    }
    return out;
}

Plane to_gray_plane(const RasterImage& img) {
    if (img.colorspace() == ColorSpace::Gray)
        return img.channel(0);
    return convert_colorspace(img, ColorSpace::Gray).channel(0);
}

Plane lightness_plane(const RasterImage& img) {
    return convert_colorspace(img, ColorSpace::Lab).channel(0);
}

Plane laplacian_3x3(const Plane& p) {
    Plane out(p.width, p.height);
    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < p.width; ++x) {
            double ring = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    if (dx != 0 || dy != 0)
                        ring += p.clamped(x + dx, y + dy);
            out(x, y) = std::abs(8.0 * p(x, y) - ring);
        }
    return out;
}

Plane laplacian_3x3(const RasterImage& img) {
    if (img.width() < 3 || img.height() < 3)
        throw Error(ErrorCode::TooSmall, "laplacian needs at least 3x3");
    const int n = img.channels();
    Plane acc = laplacian_3x3(img.channel(0));
    for (int c = 1; c < n; ++c) {
        const Plane resp = laplacian_3x3(img.channel(c));
        for (std::size_t i = 0; i < acc.size(); ++i)
            acc.data[i] += resp.data[i];
    }
    if (n > 1)
        for (double& v : acc.data)
            v /= n;
    return acc;
}

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma > 0.0))
        throw Error(ErrorCode::InvalidArgument, "InvalidSigma: sigma must be positive");
    const int r = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(2 * r + 1);
    double s = 0.0;
    for (int k = -r; k <= r; ++k) {
        taps[k + r] = std::exp(-(k * k) / (2.0 * sigma * sigma));
        s += taps[k + r];
    }
    for (double& t : taps)
        t /= s;
    return taps;
}

Plane gaussian_blur(const Plane& plane, double sigma) {
    const auto taps = gaussian_kernel(sigma);
    return convolve_cols(convolve_rows(plane, taps), taps);
}

RasterImage gaussian_blur(const RasterImage& img, double sigma) {
    const auto taps = gaussian_kernel(sigma);
    std::vector<Plane> planes;
    for (int c = 0; c < img.channels(); ++c)
        planes.push_back(convolve_cols(convolve_rows(img.channel(c), taps), taps));
    return RasterImage::from_planes(planes, img.colorspace());
}

Plane resize(const Plane& p, int w, int h) {
    if (w < 1 || h < 1)
        throw Error(ErrorCode::InvalidArgument, "resize target must be at least 1x1");
    if (w == p.width && h == p.height)
        return p;
    const double sx = static_cast<double>(p.width) / w;
    const double sy = static_cast<double>(p.height) / h;

    struct Tap {
        int i0, i1;
        double f;
    };
    auto taps = [](int n_out, int n_in, double scale) {
        std::vector<Tap> t(n_out);
        for (int o = 0; o < n_out; ++o) {
            double src = std::clamp((o + 0.5) * scale - 0.5, 0.0, static_cast<double>(n_in - 1));
            int i0 = static_cast<int>(std::floor(src));
            int i1 = std::min(i0 + 1, n_in - 1);
            t[o] = {i0, i1, src - i0};
        }
        return t;
    };
    const auto tx = taps(w, p.width, sx);
    const auto ty = taps(h, p.height, sy);

    Plane out(w, h);
    for (int y = 0; y < h; ++y) {
        const Tap& a = ty[y];
        for (int x = 0; x < w; ++x) {
            const Tap& b = tx[x];
            const double top = p(b.i0, a.i0) * (1.0 - b.f) + p(b.i1, a.i0) * b.f;
            const double bot = p(b.i0, a.i1) * (1.0 - b.f) + p(b.i1, a.i1) * b.f;
            out(x, y) = top * (1.0 - a.f) + bot * a.f;
        }
    }
    return out;
}

RasterImage resize(const RasterImage& img, int w, int h) {
    if (w == img.width() && h == img.height())
        return img;
    std::vector<Plane> planes;
    for (int c = 0; c < img.channels(); ++c)
        planes.push_back(resize(img.channel(c), w, h));
    return RasterImage::from_planes(planes, img.colorspace());
}

Plane box_filter_3x3(const Plane& p) {
    Plane out(p.width, p.height);
    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < p.width; ++x) {
            double s = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    s += p.clamped(x + dx, y + dy);
            out(x, y) = s / 9.0;
        }
    return out;
}

ComplexPlane fft2(const Plane& plane) {
    ComplexPlane data(plane.data.begin(), plane.data.end());
    return run_dft(std::move(data), plane.width, plane.height, FFTW_FORWARD);
}

ComplexPlane ifft2(const ComplexPlane& spectrum, int width, int height) {
    if (spectrum.size() != static_cast<std::size_t>(width) * height)
        throw Error(ErrorCode::DimensionMismatch, "spectrum size does not match extent");
    ComplexPlane out = run_dft(spectrum, width, height, FFTW_BACKWARD);
    const double scale = 1.0 / (static_cast<double>(width) * height);
    for (auto& v : out)
        v *= scale;
    return out;
}

Plane fft2_magnitude(const Plane& gray) {
    const ComplexPlane f = fft2(gray);
    Plane mag(gray.width, gray.height);
    for (std::size_t i = 0; i < f.size(); ++i)
        mag.data[i] = std::abs(f[i]);
    return mag;
}

Plane fft2_magnitude(const RasterImage& gray) {
    if (gray.colorspace() != ColorSpace::Gray)
        throw Error(ErrorCode::InvalidArgument, "fft2_magnitude needs a Gray image");
    return fft2_magnitude(gray.channel(0));
}

std::size_t Histogram::bin_of(double v) const {
    const double t = (v - lo) / (hi - lo) * static_cast<double>(bins.size());
    if (!(t > 0.0))
        return 0;
    return std::min(static_cast<std::size_t>(t), bins.size() - 1);
}

double Histogram::total() const {
    double s = 0.0;
    for (double b : bins)
        s += b;
    return s;
}

void Histogram::normalize() {
    const double t = total();
    if (t > 0.0)
        for (double& b : bins)
            b /= t;
    normalized = true;
}

} // namespace imgq
