#include "engrave/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "engrave/filters.hpp"
#include "engrave/image_io.hpp"

namespace engrave {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Point landmark_centroid(const LandmarkSet& lm)
{
    Point c;
    for (const Point& p : lm.points) {
        c.x += p.x;
        c.y += p.y;
    }
    return {c.x / landmark_count, c.y / landmark_count};
}

void plan_from_landmarks(WarpPlan& plan, int width, int height, const LandmarkSet& landmarks,
                         const EngravingConfig& config)
{
    LandmarkSet frame = landmarks;
    const Angle roll = landmarks.roll.normalized();
    if (config.rotate_align && roll.radians != 0.0) {
        plan.rotated = true;
        plan.roll = roll;
        plan.center = landmark_centroid(landmarks);
        frame = rotate_landmarks(landmarks, Angle{-roll.radians}, plan.center);
        frame.roll = Angle{0.0};
    }

    FaceMask mask = build_face_mask(frame, width, height, config.extend);
    const Segment axis = build_axis(frame, mask);
    Field theta = pseudo_normal_field(mask, axis);
    ShadingField raw = shading_field(theta, config.alpha);
    ShadingField shade = blur_shading(raw, mask, frame.roll, config.blur_strength);

    plan.offsets = shading_to_offsets(shade, config.warp_amplitude());
    plan.artifacts.mask = std::move(mask);
    plan.artifacts.theta = std::move(theta);
    plan.artifacts.shade_raw = std::move(raw);
    plan.artifacts.shade = std::move(shade);
}

void plan_from_depth(WarpPlan& plan, int width, int height, const DepthMap& depth, const EngravingConfig& config)
{
    const Image d = depth.depth.channels() == 3 ? to_gray(depth.depth) : depth.depth;
    if (d.width() != width || d.height() != height)
        throw InputError("depth map size does not match the image");

    ShadingField raw = depth_to_shading(d, config.alpha, 0.0);
    // The foreground (anything nearer than the farthest depth) stands in for
    // the face mask so the usual anisotropic blur applies.
    const auto lo = std::ranges::min(d.samples());
    Image fg(width, height, 1, 0);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            fg.at(x, y) = d.at(x, y) > lo ? 1 : 0;
    FaceMask mask = make_mask(fg);
    ShadingField shade = blur_shading(raw, mask, Angle{0.0}, config.blur_strength);

    plan.offsets = shading_to_offsets(shade, config.warp_amplitude());
    plan.artifacts.mask = std::move(mask);
    plan.artifacts.shade_raw = std::move(raw);
    plan.artifacts.shade = std::move(shade);
}

} // namespace

CrosshatchParams EngravingConfig::crosshatch() const
{
    CrosshatchParams p;
    p.strength = scale_s;
    p.white_band = white_band;
    return p;
}

ColourParams EngravingConfig::colour() const
{
    ColourParams p;
    p.blur_sigma = colour_blur_sigma();
    p.darken = darken;
    p.sat_boost = sat_boost;
    p.shifts = shifts;
    return p;
}

void EngravingConfig::validate() const
{
    crosshatch().validate();
    if (period < 2 || period > 511)
        throw InputError("period must lie in [2, 511]");
    if (supersample < 1 || supersample > 16)
        throw InputError("supersample must lie in [1, 16]");
    if (!std::isfinite(warp_amplitude()))
        throw InputError("amplitude must be finite");
    if (!(extend >= 0.0) || !std::isfinite(extend))
        throw InputError("extend must be finite and >= 0");
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw InputError("alpha must lie in [0, 1)");
    if (!(blur_strength >= 0.0) || !std::isfinite(blur_strength))
        throw InputError("blur strength must be finite and >= 0");
    colour().validate();
}

MatrixSet build_matrices(const EngravingConfig& config)
{
    config.validate();
    const DitherMatrix base = build_crosshatch_matrix(config.crosshatch());
    MatrixSet m;
    m.k = config.supersample;
    m.working = resample_matrix_to(base, config.period, config.period);
    m.hi = m.k == 1 ? m.working : resample_matrix_to(base, config.period * m.k, config.period * m.k);
    return m;
}

WarpPlan plan_warp(int width, int height, const Geometry& geometry, const EngravingConfig& config)
{
    config.validate();
    WarpPlan plan;
    plan.offsets = OffsetField::zeros(width, height);
    std::visit(overloaded{
                   [](const NoGeometry&) {},
                   [&](const LandmarkSet& lm) { plan_from_landmarks(plan, width, height, lm, config); },
                   [&](const DepthMap& dm) { plan_from_depth(plan, width, height, dm, config); },
               },
               geometry);
    plan.artifacts.offsets = plan.offsets;
    return plan;
}

Image engrave_gray(const Image& gray, const WarpPlan& plan, const MatrixSet& matrices)
{
    if (plan.rotated)
        return engrave_rotated(gray, matrices.hi, plan.offsets, plan.roll, plan.center, matrices.k);
    return warped_dither(gray, matrices.hi, plan.offsets, matrices.k);
}

Image engrave_gray(const Image& gray, const Geometry& geometry, const EngravingConfig& config)
{
    const Image g = gray.channels() == 3 ? to_gray(gray) : gray;
    const MatrixSet matrices = build_matrices(config);
    const WarpPlan plan = plan_warp(g.width(), g.height(), geometry, config);
    return engrave_gray(g, plan, matrices);
}

Image engrave_colour(const Image& image, const Geometry& geometry, const EngravingConfig& config)
{
    const Image rgb = to_rgb(image);
    const Image gray = to_gray(rgb);
    const MatrixSet matrices = build_matrices(config);
    const WarpPlan plan = plan_warp(rgb.width(), rgb.height(), geometry, config);
    const ColourParams cp = config.colour();

    auto engrave_fn = [&](const Image& g) { return engrave_gray(g, plan, matrices); };

    switch (config.mode) {
    case ColourMode::mask:
        return colour_mask(rgb, engrave_fn(gray), cp.blur_sigma);
    case ColourMode::mask_darkened:
        return colour_mask_darkened(rgb, engrave_fn, cp.darken, cp.sat_boost, cp.blur_sigma);
    case ColourMode::separation_same:
    case ColourMode::separation_shifted: {
        const std::array<double, 3> shifts =
            config.mode == ColourMode::separation_same ? std::array<double, 3>{0.0, 0.0, 0.0} : cp.shifts;
        if (!plan.rotated)
            return colour_separation(rgb, matrices.hi, plan.offsets, shifts, matrices.k);
        const Image upright = rotate(rgb, Angle{-plan.roll.radians}, plan.center, 255);
        const Image sep = colour_separation(upright, matrices.hi, plan.offsets, shifts, matrices.k);
        return rotate(sep, plan.roll, plan.center, 255);
    }
    }
    throw InvariantError("unhandled colour mode");
}

ShadingField shade_only(int width, int height, const Geometry& geometry, const EngravingConfig& config)
{
    WarpPlan plan = plan_warp(width, height, geometry, config);
    if (plan.artifacts.shade)
        return *plan.artifacts.shade;
    return ShadingField{Field(width, height, 1, config.alpha), config.alpha};
}

void write_artifacts(const Artifacts& artifacts, const MatrixSet& matrices, double amplitude,
                     const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw InputError("cannot create debug directory " + dir.string() + ": " + ec.message());

    save_image(matrices.working.to_image(), dir / "matrix.pgm");
    save_image(matrices.hi.to_image(), dir / "matrix_hi.pgm");
    if (artifacts.mask) {
        Image m = artifacts.mask->mask;
        for (auto& v : m.samples())
            v = v ? 255 : 0;
        save_image(m, dir / "mask.pgm");
    }
    if (artifacts.theta) {
        Field t = *artifacts.theta;
        for (double& v : t.samples())
            v /= std::numbers::pi / 2.0;
        save_image(t, dir / "theta.pgm");
    }
    if (artifacts.shade_raw)
        save_image(artifacts.shade_raw->shade, dir / "shade_raw.pgm");
    if (artifacts.shade)
        save_image(artifacts.shade->shade, dir / "shade.pgm");
    if (artifacts.offsets) {
        Field o = artifacts.offsets->dy();
        for (double& v : o.samples())
            v = amplitude != 0.0 ? v / amplitude : 0.0;
        save_image(o, dir / "offsets.pgm");
    }
}

} // namespace engrave
