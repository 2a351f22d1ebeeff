#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <variant>

#include "engrave/colour.hpp"
#include "engrave/dither_matrix.hpp"
#include "engrave/face_proxy.hpp"
#include "engrave/halftone.hpp"
#include "engrave/raster.hpp"

namespace engrave {

/// Every knob of the engraving pipeline. All defaults are deterministic.
struct EngravingConfig {
    double scale_s = 0.25;
    int period = 16;
    double white_band = 2.0 / 3.0;
    int supersample = 4;
    std::optional<double> amplitude; // defaults to `period`
    double extend = 0.45;
    double alpha = 0.4;
    double blur_strength = 1.0;
    bool rotate_align = false;

    ColourMode mode = ColourMode::mask;
    double darken = 0.75;
    double sat_boost = 1.5;
    std::array<double, 3> shifts{0.0, 1.0 / 3.0, 2.0 / 3.0};
    std::optional<double> colour_blur; // defaults to period / 2

    double warp_amplitude() const { return amplitude.value_or(static_cast<double>(period)); }
    double colour_blur_sigma() const { return colour_blur.value_or(period / 2.0); }
    CrosshatchParams crosshatch() const;
    ColourParams colour() const;

    /// Throws InputError naming the first out-of-range field.
    void validate() const;
};

/// The working-period matrix and its k-times-larger twin used for supersampling.
struct MatrixSet {
    DitherMatrix working;
    DitherMatrix hi;
    int k = 1;
};

MatrixSet build_matrices(const EngravingConfig& config);

struct NoGeometry {};
struct DepthMap {
    Image depth;
};
using Geometry = std::variant<NoGeometry, LandmarkSet, DepthMap>;

/// Intermediate rasters kept for --debug-dir.
struct Artifacts {
    std::optional<FaceMask> mask;
    std::optional<Field> theta;
    std::optional<ShadingField> shade_raw;
    std::optional<ShadingField> shade;
    std::optional<OffsetField> offsets;
};

// How the matrix should be warped for one image: offsets, and whether the
// image is engraved in a frame rotated by -roll about `center`.
struct WarpPlan {
    OffsetField offsets;
    bool rotated = false;
    Angle roll{};
    Point center{};
    Artifacts artifacts;
};

WarpPlan plan_warp(int width, int height, const Geometry& geometry, const EngravingConfig& config);

/// Monochrome engraving of a gray image.
Image engrave_gray(const Image& gray, const WarpPlan& plan, const MatrixSet& matrices);
Image engrave_gray(const Image& gray, const Geometry& geometry, const EngravingConfig& config);

/// Colour engraving in config.mode; gray input is replicated to RGB first.
Image engrave_colour(const Image& image, const Geometry& geometry, const EngravingConfig& config);

/// Blurred shading field for the given geometry (alpha everywhere without geometry).
ShadingField shade_only(int width, int height, const Geometry& geometry, const EngravingConfig& config);

/// Writes mask/theta/shade/offset/matrix PGMs into `dir` (created if needed).
void write_artifacts(const Artifacts& artifacts, const MatrixSet& matrices, double amplitude,
                     const std::filesystem::path& dir);

} // namespace engrave
