#include "imgq/simplicity.hpp"

#include "expect_error.hpp"
#include "images.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace imgq {
namespace {

using testing::constant_rgb;

TEST(MassWindow, PointMass) {
    std::vector<double> m(100, 0.0);
    m[37] = 2.0;
    const auto w = central_mass_window(m);
    EXPECT_EQ(w.first, 37u);
    EXPECT_EQ(w.width(), 1u);
}

TEST(MassWindow, UniformNeeds98Of100) {
    const std::vector<double> m(100, 0.01);
    EXPECT_EQ(central_mass_window(m).width(), 98u);
}

TEST(MassWindow, UniformHistogramOf256) {
    const std::vector<double> m(256, 1.0);
    EXPECT_EQ(central_mass_window(m).width(), 251u);
}

TEST(MassWindow, TwoSpikesSpanEverything) {
    std::vector<double> m(256, 0.0);
    m[0] = m[255] = 0.5;
    EXPECT_EQ(central_mass_window(m).width(), 256u);
}

TEST(MassWindow, Errors) {
    EXPECT_IMGQ_ERROR(central_mass_window(std::vector<double>{}), ErrorCode::EmptyInput);
    EXPECT_IMGQ_ERROR(central_mass_window(std::vector<double>(5, 0.0)), ErrorCode::DegenerateImage);
}

TEST(MassWindow, AgreesWithExhaustiveSearch) {
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng.below(120);
        std::vector<double> m(n);
        for (double& v : m)
            v = rng.bernoulli(0.3) ? 0.0 : rng.uniform();
        m[rng.below(n)] += 0.1;
        const auto [width, windows] = oracle::minimal_windows(m, 0.98);
        const auto got = central_mass_window(m);
        ASSERT_EQ(got.width(), width) << "trial " << trial;
        EXPECT_NE(std::find(windows.begin(), windows.end(), std::pair{got.first, got.last}), windows.end());
    }
}

TEST(EdgeProjection, SumsToOneAndBoundsWidths) {
    const Plane p = testing::noise_plane(100, 100, 4);
    const auto proj = project_edges(p);
    EXPECT_NEAR(std::accumulate(proj.px.begin(), proj.px.end(), 0.0), 1.0, 1e-9);
    EXPECT_NEAR(std::accumulate(proj.py.begin(), proj.py.end(), 0.0), 1.0, 1e-9);
    EXPECT_GE(proj.wx, 1u);
    EXPECT_LE(proj.wx, 100u);
}

TEST(SpatialEdge, PointAndUniformMass) {
    Plane point(100, 100);
    point(50, 50) = 1.0;
    auto proj = project_edges(point);
    EXPECT_EQ(proj.wx, 1u);
    EXPECT_DOUBLE_EQ(1.0 - static_cast<double>(proj.wx * proj.wy) / 1e4, 0.9999);

    proj = project_edges(Plane(100, 100, 1.0));
    EXPECT_EQ(proj.wx, 98u);
    EXPECT_EQ(proj.wy, 98u);
    EXPECT_NEAR(1.0 - static_cast<double>(proj.wx * proj.wy) / 1e4, 0.0396, 1e-12);
}

TEST(SpatialEdge, BlankImagePolicy) {
    const auto blank = constant_rgb(40, 30, 0.6);
    EXPECT_EQ(spatial_edge_distribution(blank), 0.0);
    EXPECT_IMGQ_ERROR(spatial_edge_distribution(blank, DegeneratePolicy::Strict), ErrorCode::DegenerateImage);
}

TEST(SpatialEdge, CompactSubjectScoresHigherThanClutter) {
    auto compact = constant_rgb(120, 120, 0.8);
    for (int y = 50; y < 70; ++y)
        for (int x = 50; x < 70; ++x)
            for (int c = 0; c < 3; ++c)
                compact.at(x, y, c) = 0.1;
    const auto clutter = testing::noise_rgb(120, 120, 3);
    EXPECT_GT(spatial_edge_distribution(compact), spatial_edge_distribution(clutter));
}

TEST(SpatialEdge, InvariantToIntensityScaling) {
    const auto img = testing::rectangles_rgb(64, 10, 5);
    const double base = spatial_edge_distribution(img);
    for (double c : {0.25, 0.5, 0.9}) {
        RasterImage scaled = img;
        for (double& v : scaled.data())
            v *= c;
        EXPECT_NEAR(spatial_edge_distribution(scaled), base, 1e-6);
    }
}

TEST(HueCount, GrayIsTwenty) { EXPECT_EQ(hue_count(constant_rgb(8, 8, 0.5)), 20.0); }

TEST(HueCount, SingleHue) { EXPECT_EQ(hue_count(constant_rgb(8, 8, 0.5, 0.0, 0.0)), 19.0); }

TEST(HueCount, TwentyEqualHues) {
    // One fully saturated pixel per 18-degree bin, at the bin center.
    RasterImage img(20, 3, ColorSpace::RGB);
    for (int x = 0; x < 20; ++x) {
        const double h = 18.0 * x + 9.0;
        const double sector = h / 60.0;
        const int i = static_cast<int>(sector);
        const double f = sector - i;
        const double v = 0.5, q = v * (1 - f), t = v * f;
        double rgb[3];
        switch (i) {
        case 0: rgb[0] = v; rgb[1] = t; rgb[2] = 0; break;
        case 1: rgb[0] = q; rgb[1] = v; rgb[2] = 0; break;
        case 2: rgb[0] = 0; rgb[1] = v; rgb[2] = t; break;
        case 3: rgb[0] = 0; rgb[1] = q; rgb[2] = v; break;
        case 4: rgb[0] = t; rgb[1] = 0; rgb[2] = v; break;
        default: rgb[0] = v; rgb[1] = 0; rgb[2] = q; break;
        }
        for (int y = 0; y < 3; ++y)
            for (int c = 0; c < 3; ++c)
                img.at(x, y, c) = rgb[c];
    }
    EXPECT_EQ(hue_count(img), 0.0);
}

TEST(HueCount, ThresholdIsStrict) {
    // 100 red pixels and exactly 5 green: 5 is not > 0.05 * 100.
    RasterImage img(105, 1, ColorSpace::RGB);
    for (int x = 0; x < 105; ++x) {
        img.at(x, 0, 0) = x < 100 ? 0.5 : 0.0;
        img.at(x, 0, 1) = x < 100 ? 0.0 : 0.5;
    }
    EXPECT_EQ(hue_count(img), 19.0);
}

TEST(HueCount, DarkAndWashedOutPixelsIgnored) {
    RasterImage img(2, 1, ColorSpace::RGB);
    img.at(0, 0, 0) = 0.1; // V below 0.15
    img.at(1, 0, 0) = 0.9;
    img.at(1, 0, 1) = 0.85; // S below 0.2
    img.at(1, 0, 2) = 0.85;
    EXPECT_EQ(hue_count(img), 20.0);
}

TEST(Contrast, ConstantIsOneLevel) { EXPECT_DOUBLE_EQ(contrast(constant_rgb(9, 9, 0.5)), 1.0 / 256.0); }

TEST(Contrast, UniformLevelsAndExtremes) {
    RasterImage img(256, 1, ColorSpace::RGB);
    for (int x = 0; x < 256; ++x)
        for (int c = 0; c < 3; ++c)
            img.at(x, 0, c) = x / 255.0;
    EXPECT_DOUBLE_EQ(contrast(img), 251.0 / 256.0);

    RasterImage split(2, 1, ColorSpace::RGB);
    for (int c = 0; c < 3; ++c)
        split.at(1, 0, c) = 1.0;
    EXPECT_DOUBLE_EQ(contrast(split), 1.0);
}

TEST(Brightness, WhiteBlackAndHalf) {
    EXPECT_NEAR(brightness(constant_rgb(4, 4, 1.0)), 100.0, 0.1);
    EXPECT_NEAR(brightness(constant_rgb(4, 4, 0.0)), 0.0, 0.1);
    RasterImage half = constant_rgb(4, 4, 0.0);
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 4; ++x)
            for (int c = 0; c < 3; ++c)
                half.at(x, y, c) = 1.0;
    EXPECT_NEAR(brightness(half), 50.0, 0.1);
}

TEST(Simplicity, InvariantToPixelPermutation) {
    const auto img = testing::noise_rgb(24, 24, 8);
    RasterImage shuffled = img;
    std::vector<std::size_t> order(24 * 24);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(2);
    rng.shuffle(order);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int c = 0; c < 3; ++c)
            shuffled.data()[i * 3 + c] = img.data()[order[i] * 3 + c];
    EXPECT_EQ(hue_count(shuffled), hue_count(img));
    EXPECT_EQ(contrast(shuffled), contrast(img));
    EXPECT_NEAR(brightness(shuffled), brightness(img), 1e-9);
}

TEST(Simplicity, OutputsStayInRangeOnRandomImages) {
    Rng rng(1234);
    for (int i = 0; i < 1000; ++i) {
        const int w = 3 + static_cast<int>(rng.below(14));
        const int h = 3 + static_cast<int>(rng.below(14));
        RasterImage img(w, h, ColorSpace::RGB);
        const double scale = rng.uniform();
        for (double& v : img.data())
            v = scale * rng.uniform();
        const double f = spatial_edge_distribution(img);
        const double hc = hue_count(img);
        const double ct = contrast(img);
        const double b = brightness(img);
        ASSERT_TRUE(f >= 0.0 && f <= 1.0) << f;
        ASSERT_TRUE(hc >= 0.0 && hc <= 20.0) << hc;
        ASSERT_TRUE(ct > 0.0 && ct <= 1.0) << ct;
        ASSERT_TRUE(b >= 0.0 && b <= 100.0) << b;
    }
}

} // namespace
} // namespace imgq
