#pragma once

#include <array>
#include <filesystem>
#include <string_view>

#include "engrave/halftone.hpp"
#include "engrave/raster.hpp"

namespace engrave {

inline constexpr int landmark_count = 68;

// 68-point facial landmarks (iBUG / dlib ordering):
//   0-16 jaw, 17-26 brows, 27-30 nose bridge, 31-35 nose base,
//   36-41 right eye, 42-47 left eye, 48-67 mouth.
struct LandmarkSet {
    std::array<Point, landmark_count> points{};
    Angle roll{};
    bool roll_given = false; // false when roll was derived from the eyes
};

namespace landmark {
inline constexpr int jaw_first = 0, jaw_last = 16, chin = 8;
inline constexpr int brow_first = 17, brow_last = 26;
inline constexpr int bridge_first = 27, bridge_last = 30;
inline constexpr int right_eye_first = 36, right_eye_last = 41;
inline constexpr int left_eye_first = 42, left_eye_last = 47;
} // namespace landmark

/// Orientation of the segment joining the two eye centroids.
Angle roll_from_eyes(const std::array<Point, landmark_count>& points);

// Parses {"points": [[x, y] x 68], "roll_deg": optional} and validates it
// against an image of the given size. Points further than one image extent
// outside the frame are rejected.
LandmarkSet parse_landmarks(std::string_view json_text, int image_width, int image_height);
LandmarkSet load_landmarks(const std::filesystem::path& path, int image_width, int image_height);

/// Rigid rotation of every point about `center`; the roll changes by `angle`.
LandmarkSet rotate_landmarks(const LandmarkSet& landmarks, Angle angle, Point center);

struct BoundingBox {
    int x0 = 0, y0 = 0, x1 = -1, y1 = -1; // inclusive
    int width() const noexcept { return x1 - x0 + 1; }
    int height() const noexcept { return y1 - y0 + 1; }
    bool empty() const noexcept { return x1 < x0 || y1 < y0; }
};

struct FaceMask {
    Image mask; // 1 inside, 0 outside
    BoundingBox bbox;

    bool contains(int x, int y) const noexcept
    {
        return x >= 0 && y >= 0 && x < mask.width() && y < mask.height() && mask.at(x, y) != 0;
    }
    std::size_t area() const noexcept;
};

/// Mask from an arbitrary 0/non-zero raster; fills in the bounding box.
FaceMask make_mask(const Image& binary);

// Filled convex hull of the jaw line plus the brow points lifted by
// extend * H against the face's down direction, H being the distance from
// the brow centroid to the chin. Clipped to the image.
FaceMask build_face_mask(const LandmarkSet& landmarks, int image_width, int image_height, double extend);

struct Segment {
    Point a;
    Point b;
};

double distance_to_segment(Point p, const Segment& s) noexcept;

// Total-least-squares line through the nose bridge, clipped to the chord of
// the mask that contains the bridge centroid. `a` is the upper end.
Segment build_axis(const LandmarkSet& landmarks, const FaceMask& mask);

// Exact Euclidean distance (in pixels) from every pixel to the nearest pixel
// whose value == 0. Pixels beyond the raster border count as zero.
Field distance_to_background(const Image& binary);

// Pseudo-normal angle in [0, pi/2]: (pi/2) D / (D + B) inside the mask, with
// D the distance to the axis and B the distance to the mask boundary
// (0 on mask pixels that touch the outside); pi/2 outside the mask.
Field pseudo_normal_field(const FaceMask& mask, const Segment& axis);

struct ShadingField {
    Field shade; // values in [alpha, 1]
    double alpha = 0.4;
};

/// cos(theta) (1 - alpha) + alpha.
ShadingField shading_field(const Field& theta, double alpha);

// Oriented blur along the head axis (roll + pi/2), sigmas proportional to
// the mask extent, followed by a stronger pass cross-faded into the top and
// bottom fifths of the face.
ShadingField blur_shading(const ShadingField& shade, const FaceMask& mask, Angle roll, double strength);

/// Depth (larger = nearer) normalised to [0, 1], mapped to [alpha, 1], then blurred.
ShadingField depth_to_shading(const Image& depth, double alpha, double sigma);

/// dy = amplitude (shade - alpha) / (1 - alpha).
OffsetField shading_to_offsets(const ShadingField& shade, double amplitude);

} // namespace engrave
