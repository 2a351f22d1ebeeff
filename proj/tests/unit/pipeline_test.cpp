#include <gtest/gtest.h>

#include <random>

#include "engrave/filters.hpp"
#include "engrave/halftone.hpp"
#include "engrave/image_io.hpp"
#include "engrave/pipeline.hpp"
#include "test_support.hpp"

using namespace engrave;
namespace et = engrave::testing;

namespace {

const Image& portrait()
{
    static const Image img = load_image(et::fixture("portrait.ppm"));
    return img;
}

} // namespace

TEST(Config, DefaultsAndValidation)
{
    EngravingConfig c;
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.warp_amplitude(), 16.0);
    EXPECT_EQ(c.colour_blur_sigma(), 8.0);
    EXPECT_EQ(c.colour().darken, 0.75);
    EXPECT_EQ(c.colour().sat_boost, 1.5);
    c.period = 1;
    EXPECT_THROW(c.validate(), InputError);
    c = {};
    c.scale_s = 0.7;
    EXPECT_THROW(c.validate(), InputError);
    c = {};
    c.alpha = 1.0;
    EXPECT_THROW(c.validate(), InputError);
}

TEST(Matrices, DefaultShapes)
{
    const MatrixSet m = build_matrices(EngravingConfig{});
    EXPECT_EQ(m.working.period_w(), 16);
    EXPECT_EQ(m.hi.period_h(), 64);
    EXPECT_EQ(m.k, 4);
    EXPECT_TRUE(m.working.finalised());
    EXPECT_TRUE(m.hi.finalised());
}

TEST(EngraveGray, NoGeometryIsStraightSupersampledDither)
{
    const Image gray = to_gray(portrait());
    const EngravingConfig c;
    EXPECT_EQ(engrave_gray(gray, NoGeometry{}, c), supersampled_dither(gray, build_matrices(c).hi, 4));
}

TEST(EngraveGray, LinesAreHorizontalWithoutGeometry)
{
    // S = 0 removes the cross-hatch. Rank ties make each matrix row a run of
    // 16 consecutive thresholds, so pick a tone that falls between rows.
    EngravingConfig c;
    c.scale_s = 0.0;
    c.supersample = 1;
    const Image out = engrave_gray(Image(64, 48, 1, std::uint8_t{96}), NoGeometry{}, c);
    for (int y = 0; y < 48; ++y)
        for (int x = 1; x < 64; ++x)
            ASSERT_EQ(out.at(x, y), out.at(0, y));
}

TEST(EngraveGray, ZeroAmplitudeMatchesNoGeometry)
{
    const Image gray = to_gray(portrait());
    EngravingConfig c;
    c.amplitude = 0.0;
    EXPECT_EQ(engrave_gray(gray, et::fixture_landmarks(), c), engrave_gray(gray, NoGeometry{}, c));
}

TEST(EngraveGray, LandmarksBendTheLines)
{
    const Image gray = to_gray(portrait());
    const EngravingConfig c;
    EXPECT_NE(engrave_gray(gray, et::fixture_landmarks(), c), engrave_gray(gray, NoGeometry{}, c));
}

TEST(EngraveGray, RampPreservesTone)
{
    const Image ramp = et::horizontal_ramp(512, 64);
    const Image out = engrave_gray(ramp, NoGeometry{}, EngravingConfig{});
    EXPECT_LE(et::block_mean_mae(ramp, out, 16), 3.0);
}

TEST(EngraveGray, RotateAlignWithZeroRollMatchesDirect)
{
    const Image gray = to_gray(portrait());
    LandmarkSet lm = et::fixture_landmarks();
    lm.roll = Angle{0.0};
    lm.roll_given = true;
    EngravingConfig direct;
    EngravingConfig aligned;
    aligned.rotate_align = true;
    const Image a = engrave_gray(gray, lm, direct);
    const Image b = engrave_gray(gray, lm, aligned);
    std::size_t same = 0;
    for (std::size_t i = 0; i < a.samples().size(); ++i)
        same += a.samples()[i] == b.samples()[i];
    EXPECT_GE(static_cast<double>(same) / a.samples().size(), 0.995);
}

TEST(EngraveGray, DepthPathUsesTheDepthMap)
{
    const Image gray = to_gray(portrait());
    const Image depth = load_image(et::fixture("portrait_depth.pgm"));
    const EngravingConfig c;
    const WarpPlan plan = plan_warp(gray.width(), gray.height(), DepthMap{depth}, c);
    EXPECT_FALSE(plan.rotated);
    double max_dy = 0.0;
    for (double v : plan.offsets.dy().samples())
        max_dy = std::max(max_dy, v);
    EXPECT_GT(max_dy, 8.0);
    EXPECT_LE(max_dy, 16.0 + 1e-9);
    EXPECT_THROW(plan_warp(10, 10, DepthMap{depth}, c), InputError);
}

TEST(ShadeOnly, AlphaWithoutGeometry)
{
    const ShadingField s = shade_only(20, 10, NoGeometry{}, EngravingConfig{});
    for (double v : s.shade.samples())
        EXPECT_EQ(v, 0.4);
}

TEST(EngraveColour, SeparationSameOnGrayReplicatesMonochrome)
{
    const Image gray = to_gray(portrait());
    EngravingConfig c;
    c.mode = ColourMode::separation_same;
    const Image out = engrave_colour(gray, et::fixture_landmarks(), c);
    const Image mono = engrave_gray(gray, et::fixture_landmarks(), c);
    for (int ch = 0; ch < 3; ++ch)
        EXPECT_EQ(channel(out, ch), mono);
}

TEST(EngraveColour, MaskOnWhiteIsWhite)
{
    EngravingConfig c;
    const Image out = engrave_colour(Image(40, 40, 3, std::uint8_t{255}), NoGeometry{}, c);
    for (auto v : out.samples())
        EXPECT_EQ(v, 255);
}

TEST(EngraveColour, AllModesRunOnTiltedFixture)
{
    const Image img = load_image(et::fixture("portrait_tilted.ppm"));
    const LandmarkSet lm = et::fixture_landmarks("portrait_tilted_landmarks.json");
    for (auto mode : {ColourMode::mask, ColourMode::mask_darkened, ColourMode::separation_same,
                      ColourMode::separation_shifted}) {
        EngravingConfig c;
        c.mode = mode;
        c.rotate_align = true;
        const Image out = engrave_colour(img, lm, c);
        EXPECT_EQ(out.channels(), 3);
        EXPECT_TRUE(out.same_size(img));
    }
}

TEST(Artifacts, WrittenForLandmarks)
{
    const auto dir = et::scratch_dir("artifacts");
    const EngravingConfig c;
    const WarpPlan plan = plan_warp(240, 300, et::fixture_landmarks(), c);
    write_artifacts(plan.artifacts, build_matrices(c), c.warp_amplitude(), dir);
    for (const char* f : {"matrix.pgm", "matrix_hi.pgm", "mask.pgm", "theta.pgm", "shade_raw.pgm", "shade.pgm",
                          "offsets.pgm"})
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    EXPECT_EQ(load_image(dir / "matrix.pgm").width(), 16);
}
