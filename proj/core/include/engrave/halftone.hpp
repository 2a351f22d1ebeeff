#pragma once

#include "engrave/dither_matrix.hpp"
#include "engrave/raster.hpp"

namespace engrave {

/// Per-pixel vertical displacement (in output pixels) of the dither matrix lookup.
class OffsetField {
public:
    OffsetField() = default;
    explicit OffsetField(Field dy);

    static OffsetField zeros(int width, int height) { return OffsetField(Field(width, height, 1, 0.0)); }
    static OffsetField constant(int width, int height, double dy)
    {
        return OffsetField(Field(width, height, 1, dy));
    }

    int width() const noexcept { return dy_.width(); }
    int height() const noexcept { return dy_.height(); }
    const Field& dy() const noexcept { return dy_; }
    double at(int x, int y) const noexcept { return dy_.at(x, y); }

private:
    Field dy_;
};

// Plain ordered dithering: 255 where image >= tiled threshold, else 0.
// The matrix must be finalised.
Image dither(const Image& gray, const DitherMatrix& matrix);

// Dithers at k times the resolution and box-averages back down. The image
// is bilinearly enlarged by k; `matrix_hi` is the k-times-larger matrix.
// The result is grayscale; k == 1 reproduces dither().
Image supersampled_dither(const Image& gray, const DitherMatrix& matrix_hi, int k);

// Like supersampled_dither, but the matrix row looked up at (x, y) is
// y + dy(x, y), wrapped into the period. The offsets are enlarged alongside
// the image and scaled by k; fractional rows interpolate linearly between
// the two straddled thresholds before comparison.
Image warped_dither(const Image& gray, const DitherMatrix& matrix_hi, const OffsetField& offsets, int k);

// Turns the image by -roll about `center`, runs warped_dither there and turns
// the engraving back by +roll. Exposed background is white. The offsets must
// already be expressed in the rotated frame.
Image engrave_rotated(const Image& gray, const DitherMatrix& matrix_hi, const OffsetField& offsets, Angle roll,
                      Point center, int k);

} // namespace engrave
