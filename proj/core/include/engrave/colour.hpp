#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>

#include "engrave/dither_matrix.hpp"
#include "engrave/halftone.hpp"
#include "engrave/raster.hpp"

namespace engrave {

enum class ColourMode {
    mask,               // engraving OR blurred colour
    mask_darkened,      // same, on a darkened input, saturation boosted after
    separation_same,    // one matrix for all three channels
    separation_shifted, // matrix shifted vertically per channel
};

/// Accepts "mask", "mask-darkened", "sep-same", "sep-shifted" and the underscore spellings.
ColourMode parse_colour_mode(std::string_view name);
std::string to_string(ColourMode mode);

struct ColourParams {
    double blur_sigma = 8.0;
    double darken = 0.75;
    double sat_boost = 1.5;
    std::array<double, 3> shifts{0.0, 1.0 / 3.0, 2.0 / 3.0}; // R, G, B, fractions of the period

    void validate() const;
};

/// Per channel max(engraving, blur(colour)): white lines stay white, black lines take the colour.
Image colour_mask(const Image& colour, const Image& engraving, double blur_sigma);

/// Every sample multiplied by `factor` and rounded.
Image darken(const Image& image, double factor);

using EngraveFn = std::function<Image(const Image& gray)>;

// Darkens the colour input, engraves its luma with `engrave`, masks with the
// darkened colour and finally boosts saturation.
Image colour_mask_darkened(const Image& colour, const EngraveFn& engrave, double darken_factor,
                           double sat_boost, double blur_sigma);

// Each channel is warp-dithered on its own with the matrix shifted by
// shifts[i] of the output period (rounded to whole output rows).
Image colour_separation(const Image& colour, const DitherMatrix& matrix_hi, const OffsetField& offsets,
                        const std::array<double, 3>& shifts, int k);

} // namespace engrave
