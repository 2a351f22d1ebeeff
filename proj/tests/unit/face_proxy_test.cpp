#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "engrave/face_proxy.hpp"
#include "test_support.hpp"

using namespace engrave;
namespace et = engrave::testing;

constexpr double half_pi = std::numbers::pi / 2;

TEST(Landmarks, ParsesExplicitRoll)
{
    const LandmarkSet face = et::synthetic_face(100, 100, 50, 70);
    const LandmarkSet parsed = parse_landmarks(et::landmarks_json(face, 68, ", \"roll_deg\": 0"), 200, 200);
    EXPECT_TRUE(parsed.roll_given);
    EXPECT_EQ(parsed.roll.radians, 0.0);
    EXPECT_NEAR(parsed.points[8].y, 170.0, 1e-6);

    const LandmarkSet tilted = parse_landmarks(et::landmarks_json(face, 68, ", \"roll_deg\": 30"), 200, 200);
    EXPECT_NEAR(tilted.roll.degrees(), 30.0, 1e-9);
}

TEST(Landmarks, WrongCountIsRejected)
{
    const LandmarkSet face = et::synthetic_face(100, 100, 50, 70);
    try {
        parse_landmarks(et::landmarks_json(face, 67), 200, 200);
        FAIL() << "67 points accepted";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("expected 68 points"), std::string::npos);
    }
}

TEST(Landmarks, RollFromEyes)
{
    LandmarkSet face = et::synthetic_face(150, 150, 60, 80);
    for (int i = 0; i < 6; ++i) {
        face.points[36 + i] = {100, 100};
        face.points[42 + i] = {200, 100};
    }
    const LandmarkSet parsed = parse_landmarks(et::landmarks_json(face), 300, 300);
    EXPECT_FALSE(parsed.roll_given);
    EXPECT_EQ(parsed.roll.radians, 0.0);
}

TEST(Landmarks, MalformedInputIsRejected)
{
    const LandmarkSet face = et::synthetic_face(100, 100, 50, 70);
    EXPECT_THROW(parse_landmarks("{\"points\": 3}", 200, 200), InputError);
    EXPECT_THROW(parse_landmarks("not json", 200, 200), InputError);
    EXPECT_THROW(parse_landmarks(et::landmarks_json(face, 68, ", \"roll_deg\": \"x\""), 200, 200), InputError);
    LandmarkSet far_away = face;
    far_away.points[3] = {1000, 10};
    EXPECT_THROW(parse_landmarks(et::landmarks_json(far_away), 200, 200), InputError);
    EXPECT_THROW(load_landmarks(et::fixture("does_not_exist.json"), 200, 200), InputError);
}

TEST(Landmarks, FixtureLoads)
{
    const LandmarkSet s = et::fixture_landmarks();
    EXPECT_NEAR(s.roll.radians, 0.0, 1e-6);
    const LandmarkSet t = et::fixture_landmarks("portrait_tilted_landmarks.json");
    EXPECT_NEAR(t.roll.degrees(), 15.0, 0.5);
}

TEST(Landmarks, RotationMovesPointsAndRoll)
{
    const LandmarkSet face = et::synthetic_face(100, 100, 50, 70);
    const LandmarkSet r = rotate_landmarks(face, Angle{half_pi}, Point{100, 100});
    EXPECT_NEAR(r.points[8].x, 30.0, 1e-9); // chin (100, 170) turns to (30, 100)
    EXPECT_NEAR(r.points[8].y, 100.0, 1e-9);
    EXPECT_NEAR(r.roll.radians, face.roll.radians + half_pi, 1e-9);
    EXPECT_NEAR(roll_from_eyes(r.points).radians, r.roll.radians, 1e-9);
}

TEST(FaceMask, ExtensionLiftsTheTop)
{
    const double cy = 140, b = 80;
    const LandmarkSet face = et::synthetic_face(120, cy, 60, b);
    double brow_top = 1e9, brow_sum = 0;
    for (int i = 17; i <= 26; ++i) {
        brow_top = std::min(brow_top, face.points[i].y);
        brow_sum += face.points[i].y;
    }
    const double height = (cy + b) - brow_sum / 10.0;

    const FaceMask flat = build_face_mask(face, 240, 300, 0.0);
    EXPECT_NEAR(flat.bbox.y0, brow_top, 1.0);
    const FaceMask tall = build_face_mask(face, 240, 300, 0.45);
    EXPECT_NEAR(tall.bbox.y0, brow_top - 0.45 * height, 1.0);
    EXPECT_NEAR(tall.bbox.y1, cy + b, 1.0);
    EXPECT_GT(tall.area(), flat.area());
}

TEST(FaceMask, IsFilledAndConvex)
{
    const FaceMask m = build_face_mask(et::synthetic_face(120, 140, 60, 80), 240, 300, 0.45);
    // every row and every column of a convex region is one run
    for (int y = 0; y < 300; ++y) {
        int runs = 0;
        for (int x = 0; x < 240; ++x)
            runs += m.contains(x, y) && !m.contains(x - 1, y);
        EXPECT_LE(runs, 1);
    }
    for (int x = 0; x < 240; ++x) {
        int runs = 0;
        for (int y = 0; y < 300; ++y)
            runs += m.contains(x, y) && !m.contains(x, y - 1);
        EXPECT_LE(runs, 1);
    }
    EXPECT_TRUE(m.contains(120, 140));
}

TEST(FaceMask, ClipsToImage)
{
    const FaceMask m = build_face_mask(et::synthetic_face(10, 150, 60, 80), 100, 300, 0.45);
    EXPECT_EQ(m.bbox.x0, 0);
    EXPECT_TRUE(m.contains(0, 150));
}

TEST(Axis, VerticalBridgeSpansTheMask)
{
    const FaceMask m = et::disc_mask(101, 101, 50, 50, 50);
    LandmarkSet s = et::synthetic_face(50, 50, 30, 40);
    for (int i = 0; i < 4; ++i)
        s.points[27 + i] = {50, 30.0 + 10 * i};
    const Segment axis = build_axis(s, m);
    EXPECT_NEAR(axis.a.x, 50, 1e-9);
    EXPECT_NEAR(axis.b.x, 50, 1e-9);
    EXPECT_NEAR(axis.a.y, 0, 0.5);
    EXPECT_NEAR(axis.b.y, 100, 0.5);
}

TEST(Axis, TiltedBridgeIsFitExactly)
{
    const FaceMask m = et::disc_mask(201, 201, 100, 100, 90);
    LandmarkSet s = et::synthetic_face(100, 100, 60, 80);
    const double t = 0.3;
    for (int i = 0; i < 4; ++i)
        s.points[27 + i] = {100 + std::sin(t) * (i - 1.5) * 10, 100 + std::cos(t) * (i - 1.5) * 10};
    const Segment axis = build_axis(s, m);
    EXPECT_NEAR(std::atan2(axis.b.x - axis.a.x, axis.b.y - axis.a.y), t, 1e-9);
    EXPECT_LT(axis.a.y, axis.b.y);
    EXPECT_NEAR(std::hypot(axis.b.x - axis.a.x, axis.b.y - axis.a.y), 180, 2.0);
}

TEST(DistanceTransform, MatchesBruteForce)
{
    Image bin(23, 17, 1, std::uint8_t{1});
    const std::vector<std::pair<int, int>> holes{{3, 4}, {15, 9}, {20, 2}, {10, 15}};
    for (auto [x, y] : holes)
        bin.at(x, y) = 0;
    const Field d = distance_to_background(bin);
    for (int y = 0; y < 17; ++y)
        for (int x = 0; x < 23; ++x) {
            // nearest zero pixel or the virtual ring just outside the raster
            double best = std::min({x + 1.0, y + 1.0, 23.0 - x, 17.0 - y});
            for (auto [hx, hy] : holes)
                best = std::min(best, std::hypot(x - hx, y - hy));
            EXPECT_NEAR(d.at(x, y), best, 1e-9) << x << "," << y;
        }
}

TEST(PseudoNormal, BoundaryValuesAndRange)
{
    const FaceMask m = et::disc_mask(81, 81, 40, 40, 30);
    const Segment axis{{40, 10}, {40, 70}};
    const Field theta = pseudo_normal_field(m, axis);
    EXPECT_EQ(theta.at(40, 40), 0.0);
    EXPECT_EQ(theta.at(40, 15), 0.0);
    EXPECT_EQ(theta.at(0, 0), half_pi);
    EXPECT_DOUBLE_EQ(theta.at(10, 40), half_pi); // leftmost mask pixel touches the outside
    EXPECT_EQ(theta.at(9, 40), half_pi);
    for (double v : theta.samples()) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, half_pi);
    }
}

TEST(PseudoNormal, DiscClosedForm)
{
    const double r = 100;
    const FaceMask m = et::disc_mask(241, 241, 120, 120, r);
    const Field theta = pseudo_normal_field(m, Segment{{120, 20}, {120, 220}});
    for (int x = 120 - 98; x <= 120 + 98; ++x) {
        const double d = std::abs(x - 120.0);
        EXPECT_NEAR(theta.at(x, 120), half_pi * d / r, 0.02) << "x=" << x;
    }
}

TEST(Shading, Examples)
{
    const Field theta(3, 1, 1, std::vector<double>{0.0, half_pi, std::numbers::pi / 3});
    const ShadingField s = shading_field(theta, 0.4);
    EXPECT_DOUBLE_EQ(s.shade.at(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(s.shade.at(1, 0), 0.4);
    EXPECT_NEAR(s.shade.at(2, 0), 0.7, 1e-12);
    EXPECT_THROW(shading_field(theta, 1.0), InputError);
}

TEST(Shading, MonotoneInTheta)
{
    std::vector<double> t(101);
    for (int i = 0; i <= 100; ++i)
        t[i] = half_pi * i / 100.0;
    const ShadingField s = shading_field(Field(101, 1, 1, t), 0.25);
    for (int i = 1; i <= 100; ++i)
        EXPECT_LE(s.shade.at(i, 0), s.shade.at(i - 1, 0));
}

TEST(BlurShading, StrengthZeroAndConstants)
{
    const FaceMask m = build_face_mask(et::synthetic_face(120, 140, 60, 80), 240, 300, 0.45);
    const Segment axis = build_axis(et::synthetic_face(120, 140, 60, 80), m);
    const ShadingField s = shading_field(pseudo_normal_field(m, axis), 0.4);
    EXPECT_EQ(blur_shading(s, m, Angle{0.2}, 0.0).shade, s.shade);

    const ShadingField flat{Field(240, 300, 1, 0.55), 0.4};
    for (double roll : {0.0, 0.3, -1.0}) {
        const ShadingField out = blur_shading(flat, m, Angle{roll}, 1.5);
        for (double v : out.shade.samples())
            EXPECT_NEAR(v, 0.55, 1e-9);
    }

    const ShadingField blurred = blur_shading(s, m, Angle{0.0}, 1.0);
    for (double v : blurred.shade.samples()) {
        EXPECT_GE(v, 0.4);
        EXPECT_LE(v, 1.0);
    }
    EXPECT_THROW(blur_shading(s, m, Angle{0.0}, -1.0), InputError);
}

TEST(DepthShading, AffineMap)
{
    const Image depth(3, 1, 1, std::vector<std::uint8_t>{0, 100, 200});
    const ShadingField s = depth_to_shading(depth, 0.4, 0.0);
    EXPECT_DOUBLE_EQ(s.shade.at(0, 0), 0.4);
    EXPECT_NEAR(s.shade.at(1, 0), 0.7, 1e-12);
    EXPECT_DOUBLE_EQ(s.shade.at(2, 0), 1.0);
    EXPECT_THROW(depth_to_shading(Image(3, 3, 1, std::uint8_t{5}), 0.4, 0.0), InputError);
    EXPECT_THROW(depth_to_shading(Image(3, 3, 3), 0.4, 0.0), InputError);
}

TEST(Offsets, AffineInShade)
{
    const ShadingField s{Field(3, 1, 1, std::vector<double>{0.4, 1.0, 0.7}), 0.4};
    const OffsetField dy = shading_to_offsets(s, 16.0);
    EXPECT_DOUBLE_EQ(dy.at(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(dy.at(1, 0), 16.0);
    EXPECT_NEAR(dy.at(2, 0), 8.0, 1e-12);
    const OffsetField none = shading_to_offsets(s, 0.0);
    for (double v : none.dy().samples())
        EXPECT_EQ(v, 0.0);
}

TEST(Offsets, DiscMidlineDecreasesTowardRim)
{
    const FaceMask m = et::disc_mask(201, 201, 100, 100, 80);
    const ShadingField s = shading_field(pseudo_normal_field(m, Segment{{100, 20}, {100, 180}}), 0.4);
    const OffsetField dy = shading_to_offsets(s, 16.0);
    EXPECT_DOUBLE_EQ(dy.at(100, 100), 16.0);
    for (int x = 101; x <= 181; ++x)
        EXPECT_LE(dy.at(x, 100), dy.at(x - 1, 100));
    EXPECT_DOUBLE_EQ(dy.at(181, 100), 0.0);
}
