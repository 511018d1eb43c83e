#include "imgq/blur.hpp"

#include "expect_error.hpp"
#include "images.hpp"

#include <gtest/gtest.h>

namespace imgq {
namespace {

using testing::constant_rgb;

RasterImage rotate180(const RasterImage& img) {
    RasterImage out(img.width(), img.height(), img.colorspace());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            for (int c = 0; c < img.channels(); ++c)
                out.at(img.width() - 1 - x, img.height() - 1 - y, c) = img.at(x, y, c);
    return out;
}

TEST(BlurFrequency, ConstantImageOnlyDc) {
    const auto img = constant_rgb(32, 32, 0.4);
    EXPECT_LE(blur_frequency(img), 1.0 / (32.0 * 32.0));
    BlurConfig cfg;
    cfg.theta = 1e-3;
    EXPECT_LE(blur_frequency(img, cfg), 1.0 / (32.0 * 32.0));
}

TEST(BlurFrequency, ImpulseIsFlat) {
    RasterImage img(16, 16, ColorSpace::RGB);
    for (int c = 0; c < 3; ++c)
        img.at(3, 5, c) = 1.0;
    BlurConfig cfg;
    cfg.theta = 0.5;
    EXPECT_EQ(blur_frequency(img, cfg), 1.0);
}

TEST(BlurFrequency, WhiteNoiseSharperThanBlurred) {
    // Theta is fixed from the unmodified image.
    const auto img = testing::gray_noise_rgb(64, 64, 17);
    BlurConfig cfg;
    cfg.theta = blur_theta(img);
    EXPECT_GT(blur_frequency(img, cfg), blur_frequency(gaussian_blur(img, 2.0), cfg));
}

TEST(BlurFrequency, MonotoneInSigmaWithFixedTheta) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto img = testing::rectangles_rgb(96, 30, seed);
        BlurConfig cfg;
        cfg.theta = blur_theta(img);
        double previous = blur_frequency(img, cfg);
        for (double sigma : {0.5, 1.0, 2.0, 4.0}) {
            const double f = blur_frequency(gaussian_blur(img, sigma), cfg);
            EXPECT_LE(f, previous) << "seed " << seed << " sigma " << sigma;
            previous = f;
        }
    }
}

TEST(BlurFrequency, RejectsNonPositiveTheta) {
    BlurConfig cfg;
    cfg.theta = 0.0;
    EXPECT_IMGQ_ERROR(blur_frequency(constant_rgb(8, 8, 0.5), cfg), ErrorCode::InvalidArgument);
}

TEST(BlurFrequency, RotationInvariant) {
    const auto img = testing::noise_rgb(40, 28, 6);
    EXPECT_NEAR(blur_frequency(rotate180(img)), blur_frequency(img), 1e-6);
}

TEST(EdgeStructure, SharpStepIsNotBlurred) {
    const auto step = testing::step_rgb(64, 64, 31, 0.0, 1.0);
    EXPECT_LE(blur_edge_structure(step), 0.05);
    EXPECT_GT(edge_structure_counts(step).n_edges, 0);
}

TEST(EdgeStructure, BlurredStepScoresHigher) {
    for (int edge : {31, 32, 33}) {
        const auto step = testing::step_rgb(64, 64, edge, 0.0, 1.0);
        EXPECT_GT(blur_edge_structure(gaussian_blur(step, 3.0)), blur_edge_structure(step)) << edge;
    }
}

TEST(EdgeStructure, StepAlignmentDoesNotMatter) {
    const double a = blur_edge_structure(testing::step_rgb(64, 64, 31, 0.0, 1.0));
    for (int edge : {28, 29, 30, 32, 33, 34, 35})
        EXPECT_EQ(blur_edge_structure(testing::step_rgb(64, 64, edge, 0.0, 1.0)), a) << edge;
}

TEST(EdgeStructure, ConstantHasNoEdges) {
    const auto counts = edge_structure_counts(constant_rgb(32, 32, 0.5));
    EXPECT_EQ(counts.n_edges, 0);
    EXPECT_EQ(blur_edge_structure(constant_rgb(32, 32, 0.5)), 0.0);
}

TEST(EdgeStructure, CountsAreConsistentAndRatioBounded) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto img = testing::rectangles_rgb(64, 20, seed);
        if (seed % 2 == 1)
            img = gaussian_blur(img, 0.5 + static_cast<double>(seed) / 10.0);
        const auto c = edge_structure_counts(img);
        EXPECT_LE(c.n_blurred_gstep_roof, c.n_gstep_roof);
        EXPECT_LE(c.n_gstep_roof + c.n_dirac_astep, c.n_edges);
        const double r = blur_edge_structure(img);
        EXPECT_GE(r, 0.0);
        EXPECT_LE(r, 1.0);
    }
}

TEST(EdgeStructure, DeterministicAndRotationInvariant) {
    const auto img = gaussian_blur(testing::rectangles_rgb(64, 20, 3), 1.2);
    EXPECT_EQ(blur_edge_structure(img), blur_edge_structure(img));
    const auto c = edge_structure_counts(img);
    const auto r = edge_structure_counts(rotate180(img));
    EXPECT_EQ(c.n_edges, r.n_edges);
    EXPECT_EQ(c.n_gstep_roof, r.n_gstep_roof);
    EXPECT_EQ(c.n_blurred_gstep_roof, r.n_blurred_gstep_roof);
}

TEST(EdgeStructure, TooSmall) {
    EXPECT_IMGQ_ERROR(blur_edge_structure(constant_rgb(7, 16, 0.5)), ErrorCode::TooSmall);
}

} // namespace
} // namespace imgq
