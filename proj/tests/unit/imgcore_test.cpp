#include "imgq/imgcore.hpp"

#include "expect_error.hpp"
#include "images.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace imgq {
namespace {

using testing::constant_rgb;
using testing::noise_plane;

TEST(RasterImage, RejectsOutOfRangeSamples) {
    RasterImage img(3, 3, ColorSpace::RGB);
    img.at(1, 1, 2) = 1.5;
    EXPECT_IMGQ_ERROR(img.validate(), ErrorCode::InvalidArgument);
    EXPECT_IMGQ_ERROR(RasterImage(2, 2, ColorSpace::RGB, std::vector<double>(5, 0.0)),
                      ErrorCode::InvalidArgument);
}

TEST(RasterImage, ChannelCounts) {
    EXPECT_EQ(channel_count(ColorSpace::RGB), 3);
    EXPECT_EQ(channel_count(ColorSpace::Gray), 1);
    EXPECT_EQ(RasterImage(4, 5, ColorSpace::Lab).data().size(), 60u);
}

TEST(ConvertColorspace, WhiteIsFullLightness) {
    const auto lab = convert_colorspace(constant_rgb(3, 3, 1.0), ColorSpace::Lab);
    EXPECT_NEAR(lab.at(1, 1, 0), 100.0, 0.1);
    EXPECT_NEAR(lab.at(1, 1, 1), 0.0, 0.01);
    EXPECT_NEAR(lab.at(1, 1, 2), 0.0, 0.01);
}

TEST(ConvertColorspace, GrayHasNoSaturation) {
    const auto hsv = convert_colorspace(constant_rgb(3, 3, 0.5), ColorSpace::HSV);
    EXPECT_EQ(hsv.at(0, 0, 1), 0.0);
    EXPECT_DOUBLE_EQ(hsv.at(0, 0, 2), 0.5);
}

TEST(ConvertColorspace, RedHue) {
    const auto hsv = convert_colorspace(constant_rgb(3, 3, 1.0, 0.0, 0.0), ColorSpace::HSV);
    EXPECT_DOUBLE_EQ(hsv.at(2, 2, 0), 0.0);
    EXPECT_DOUBLE_EQ(hsv.at(2, 2, 1), 1.0);
    EXPECT_DOUBLE_EQ(hsv.at(2, 2, 2), 1.0);
}

TEST(ConvertColorspace, HueOfPrimariesAndSecondaries) {
    const struct {
        double r, g, b, hue;
    } cases[] = {{0, 1, 0, 120}, {0, 0, 1, 240}, {1, 1, 0, 60}, {0, 1, 1, 180}, {1, 0, 1, 300}};
    for (const auto& c : cases) {
        const auto hsv = convert_colorspace(constant_rgb(3, 3, c.r, c.g, c.b), ColorSpace::HSV);
        EXPECT_NEAR(hsv.at(0, 0, 0), c.hue, 1e-9);
    }
}

TEST(ConvertColorspace, LabOfPrimaryRedMatchesReference) {
    // sRGB red under D65: L=53.24, a=80.09, b=67.20.
    const auto lab = convert_colorspace(constant_rgb(3, 3, 1.0, 0.0, 0.0), ColorSpace::Lab);
    EXPECT_NEAR(lab.at(0, 0, 0), 53.24, 0.05);
    EXPECT_NEAR(lab.at(0, 0, 1), 80.09, 0.05);
    EXPECT_NEAR(lab.at(0, 0, 2), 67.20, 0.05);
}

TEST(ConvertColorspace, GrayUsesRec601) {
    const auto g = convert_colorspace(constant_rgb(3, 3, 0.2, 0.6, 1.0), ColorSpace::Gray);
    EXPECT_NEAR(g.at(0, 0), 0.299 * 0.2 + 0.587 * 0.6 + 0.114 * 1.0, 1e-12);
}

TEST(ConvertColorspace, OnlyFromRgb) {
    const auto gray = convert_colorspace(constant_rgb(3, 3, 0.5), ColorSpace::Gray);
    EXPECT_IMGQ_ERROR(convert_colorspace(gray, ColorSpace::Lab), ErrorCode::UnsupportedConversion);
}

TEST(Laplacian, ConstantGivesZero) {
    const Plane r = laplacian_3x3(constant_rgb(7, 5, 0.3));
    for (double v : r.data)
        EXPECT_EQ(v, 0.0);
}

TEST(Laplacian, ImpulseResponse) {
    Plane p(7, 7);
    p(3, 3) = 1.0;
    const Plane r = laplacian_3x3(p);
    for (int y = 0; y < 7; ++y)
        for (int x = 0; x < 7; ++x) {
            const int d = std::max(std::abs(x - 3), std::abs(y - 3));
            const double expected = d == 0 ? 8.0 : (d == 1 ? 1.0 : 0.0);
            EXPECT_DOUBLE_EQ(r(x, y), expected) << x << "," << y;
        }
}

TEST(Laplacian, RampInteriorIsZero) {
    Plane p(9, 9);
    for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 9; ++x)
            p(x, y) = 0.05 * x + 0.03 * y;
    const Plane r = laplacian_3x3(p);
    for (int y = 1; y < 8; ++y)
        for (int x = 1; x < 8; ++x)
            EXPECT_NEAR(r(x, y), 0.0, 1e-12);
}

TEST(Laplacian, AveragesChannels) {
    RasterImage img(5, 5, ColorSpace::RGB);
    img.at(2, 2, 0) = 1.0; // red impulse only
    const Plane r = laplacian_3x3(img);
    EXPECT_NEAR(r(2, 2), 8.0 / 3.0, 1e-12);
}

TEST(Laplacian, TooSmall) {
    EXPECT_IMGQ_ERROR(laplacian_3x3(constant_rgb(2, 2, 0.5)), ErrorCode::TooSmall);
}

TEST(GaussianBlur, KernelShape) {
    const auto k = gaussian_kernel(1.0);
    ASSERT_EQ(k.size(), 7u);
    double s = 0.0;
    for (double v : k)
        s += v;
    EXPECT_NEAR(s, 1.0, 1e-15);
    EXPECT_EQ(gaussian_kernel(0.4).size(), 5u);
    EXPECT_IMGQ_ERROR(gaussian_kernel(0.0), ErrorCode::InvalidArgument);
    EXPECT_IMGQ_ERROR(gaussian_blur(Plane(5, 5), -1.0), ErrorCode::InvalidArgument);
}

TEST(GaussianBlur, ConstantUnchanged) {
    const auto img = constant_rgb(9, 6, 0.25, 0.5, 0.75);
    const auto b = gaussian_blur(img, 1.7);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 9; ++x)
            for (int c = 0; c < 3; ++c)
                EXPECT_NEAR(b.at(x, y, c), img.at(x, y, c), 1e-12);
}

TEST(GaussianBlur, ImpulseMatchesDenseConvolution) {
    Plane p(15, 15);
    p(7, 7) = 1.0;
    const Plane b = gaussian_blur(p, 1.0);
    // Dense 2-D Gaussian evaluated directly, normalized over its support.
    double norm = 0.0;
    for (int j = -3; j <= 3; ++j)
        norm += std::exp(-0.5 * j * j);
    for (int y = 4; y <= 10; ++y)
        for (int x = 4; x <= 10; ++x) {
            const double dx = x - 7, dy = y - 7;
            const double expected = std::exp(-0.5 * (dx * dx + dy * dy)) / (norm * norm);
            EXPECT_NEAR(b(x, y), expected, 1e-12);
        }
    const auto k = gaussian_kernel(1.0);
    EXPECT_NEAR(b(7, 7), k[3] * k[3], 1e-15);
}

TEST(GaussianBlur, WiderSigmaLowersVariance) {
    const Plane p = noise_plane(64, 64, 5);
    auto variance = [](const Plane& q) {
        const double mean = q.sum() / static_cast<double>(q.size());
        double s = 0.0;
        for (double v : q.data)
            s += (v - mean) * (v - mean);
        return s / static_cast<double>(q.size());
    };
    EXPECT_GT(variance(gaussian_blur(p, 0.3)), variance(gaussian_blur(p, 3.0)));
}

TEST(GaussianBlur, PreservesMeanOfInteriorContent) {
    // Content away from the border: replication cannot leak mass.
    Plane p(48, 48);
    const Plane inner = noise_plane(24, 24, 3);
    for (int y = 0; y < 24; ++y)
        for (int x = 0; x < 24; ++x)
            p(x + 12, y + 12) = inner(x, y);
    for (double sigma : {0.5, 1.0, 2.0}) {
        const Plane b = gaussian_blur(p, sigma);
        EXPECT_NEAR(b.sum() / static_cast<double>(b.size()), p.sum() / static_cast<double>(p.size()), 1e-6);
    }
}

TEST(Resize, ConstantStaysConstant) {
    const auto r = resize(constant_rgb(13, 7, 0.4), 100, 100);
    EXPECT_EQ(r.width(), 100);
    EXPECT_EQ(r.height(), 100);
    for (double v : r.data())
        EXPECT_NEAR(v, 0.4, 1e-12);
}

TEST(Resize, IdentityIsBitExact) {
    const auto img = testing::noise_rgb(17, 9, 2);
    EXPECT_EQ(resize(img, 17, 9), img);
}

TEST(Resize, HalvingCheckerboardAveragesBlocks) {
    Plane p(4, 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            p(x, y) = (x + y) % 2;
    const Plane r = resize(p, 2, 2);
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 2; ++x) {
            const double block = (p(2 * x, 2 * y) + p(2 * x + 1, 2 * y) + p(2 * x, 2 * y + 1) +
                                  p(2 * x + 1, 2 * y + 1)) / 4.0;
            EXPECT_NEAR(r(x, y), block, 1e-9);
        }
}

TEST(Fft, MatchesNaiveDft) {
    const Plane p = noise_plane(8, 8, 21);
    const auto fast = fft2(p);
    const auto slow = oracle::naive_dft(p);
    for (std::size_t i = 0; i < fast.size(); ++i)
        EXPECT_LT(std::abs(fast[i] - slow[i]), 1e-9);
}

TEST(Fft, NonSquareMatchesNaiveDft) {
    const Plane p = noise_plane(6, 5, 4);
    const auto fast = fft2(p);
    const auto slow = oracle::naive_dft(p);
    for (std::size_t i = 0; i < fast.size(); ++i)
        EXPECT_LT(std::abs(fast[i] - slow[i]), 1e-9);
}

TEST(Fft, ConstantAndImpulse) {
    const Plane c(8, 6, 0.5);
    const Plane mag = fft2_magnitude(c);
    EXPECT_NEAR(mag(0, 0), 8 * 6 * 0.5, 1e-12);
    for (std::size_t i = 1; i < mag.size(); ++i)
        EXPECT_NEAR(mag.data[i], 0.0, 1e-12);

    Plane impulse(8, 8);
    impulse(0, 0) = 1.0;
    for (double v : fft2_magnitude(impulse).data)
        EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Fft, Parseval) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Plane p = noise_plane(16, 16, seed);
        const Plane mag = fft2_magnitude(p);
        double spectral = 0.0, spatial = 0.0;
        for (double v : mag.data)
            spectral += v * v;
        for (double v : p.data)
            spatial += v * v;
        EXPECT_NEAR(spectral / (256.0 * spatial), 1.0, 1e-9);
    }
}

TEST(Fft, InverseRoundTrip) {
    const Plane p = noise_plane(12, 10, 8);
    const auto back = ifft2(fft2(p), 12, 10);
    for (std::size_t i = 0; i < p.size(); ++i) {
        EXPECT_NEAR(back[i].real(), p.data[i], 1e-12);
        EXPECT_NEAR(back[i].imag(), 0.0, 1e-12);
    }
}

TEST(Histogram, BinsAndNormalization) {
    Histogram h(20, 0.0, 360.0);
    EXPECT_EQ(h.bin_of(0.0), 0u);
    EXPECT_EQ(h.bin_of(17.999), 0u);
    EXPECT_EQ(h.bin_of(18.0), 1u);
    EXPECT_EQ(h.bin_of(359.9), 19u);
    EXPECT_EQ(h.bin_of(360.0), 19u);
    h.add(10.0);
    h.add(200.0, 3.0);
    h.normalize();
    EXPECT_TRUE(h.normalized);
    EXPECT_NEAR(h.total(), 1.0, 1e-9);
    EXPECT_DOUBLE_EQ(h.bins[0], 0.25);

    Histogram empty(4, 0.0, 1.0);
    empty.normalize();
    EXPECT_EQ(empty.total(), 0.0);
}

} // namespace
} // namespace imgq
