#pragma once

#include "engrave/raster.hpp"

namespace engrave {

enum class ResampleMode {
    bilinear,     // for enlarging
    area_average, // for shrinking; exact box mean for integer factors
};

/// Rec.601 luma, round(0.299 R + 0.587 G + 0.114 B).
Image to_gray(const Image& colour);

/// Expand a gray raster to three identical channels; colour input is returned as is.
Image to_rgb(const Image& image);

Field resample(const Field& src, int new_width, int new_height, ResampleMode mode);
Image resample(const Image& src, int new_width, int new_height, ResampleMode mode);

/// Bilinear sample with clamp-to-edge addressing; (x, y) in pixel-center coordinates.
double sample_bilinear(const Field& src, double x, double y, int c = 0);

// Inverse-mapped bilinear rotation about `center`: the content is turned by
// `angle` (positive turns +x toward +y, i.e. clockwise on screen). The output
// keeps the input dimensions; samples that fall outside the source take `fill`.
Field rotate(const Field& src, Angle angle, Point center, double fill);
Image rotate(const Image& src, Angle angle, Point center, std::uint8_t fill);

// Separable Gaussian with radius ceil(3 sigma), normalized taps and
// clamp-to-edge borders. sigma == 0 returns the input unchanged.
Field gaussian_blur(const Field& src, double sigma);
Image gaussian_blur(const Image& src, double sigma);

/// Separable blur with independent horizontal and vertical sigmas.
Field gaussian_blur_xy(const Field& src, double sigma_x, double sigma_y);

// Anisotropic Gaussian whose major axis points along `axis` (0 = +x,
// pi/2 = +y, i.e. vertical). Axis-aligned cases run directly as a separable
// blur; other orientations rotate onto an enlarged canvas (clamp-to-edge
// sampling, so nothing is filled in), blur separably and rotate back.
Field oriented_gaussian_blur(const Field& src, double sigma_along, double sigma_across, Angle axis);
Image oriented_gaussian_blur(const Image& src, double sigma_along, double sigma_across, Angle axis);

// Scales HSV saturation by `factor` (capped at 1) keeping hue and value.
Image scale_saturation(const Image& colour, double factor);

} // namespace engrave
