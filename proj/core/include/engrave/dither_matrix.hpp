#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "engrave/raster.hpp"

namespace engrave {

/**
 * A tileable threshold grid for ordered dithering.
 *
 * A pixel of tone g at (x, y) renders white when
 * g >= thresholds(x mod period_w, y mod period_h). Matrices coming out of
 * equalize() are "finalised": every threshold lies in [1, 255], so tone 0
 * is pure black and tone 255 pure white. Intermediate construction stages
 * may hold any value in [0, 255].
 */
class DitherMatrix {
public:
    DitherMatrix() = default;
    DitherMatrix(int period_w, int period_h, std::vector<std::uint8_t> thresholds, bool finalised = false);

    /// Import from an 8-bit gray raster; finalised when every value is >= 1.
    static DitherMatrix from_image(const Image& image);
    /// Thresholds as gray values, for inspection and golden files.
    Image to_image() const;

    int period_w() const noexcept { return period_w_; }
    int period_h() const noexcept { return period_h_; }
    std::size_t size() const noexcept { return thresholds_.size(); }
    bool finalised() const noexcept { return finalised_; }

    std::uint8_t at(int col, int row) const noexcept
    {
        return thresholds_[static_cast<std::size_t>(row) * static_cast<std::size_t>(period_w_) +
                           static_cast<std::size_t>(col)];
    }

    /// Lookup with the matrix tiled over the plane; negative coordinates wrap.
    std::uint8_t tiled(int x, int y) const noexcept { return at(wrap(x, period_w_), wrap(y, period_h_)); }

    std::span<const std::uint8_t> thresholds() const noexcept { return thresholds_; }

    bool operator==(const DitherMatrix&) const = default;

    static int wrap(int v, int period) noexcept
    {
        int r = v % period;
        return r < 0 ? r + period : r;
    }

private:
    int period_w_ = 0;
    int period_h_ = 0;
    std::vector<std::uint8_t> thresholds_;
    bool finalised_ = false;
};

struct CrosshatchParams {
    double strength = 0.25;             // S: how far stripe thresholds move away from 255
    double stripe_fraction = 0.5;       // share of the period width carrying the vertical stripe
    double white_band = 2.0 / 3.0;      // rows (split top/bottom) that receive white cross-hatch
    int base_width = 511;
    int base_height = 511;

    void validate() const;
};

// Rows of constant value round(255 |2r/(h-1) - 1|): 255 at the top and
// bottom rows falling to 0 on the centre row. Height must be odd and >= 3.
DitherMatrix build_horizontal_profile(int height, int width);

// x -> round(255 - S (255 - x)). Compresses every threshold into
// [255 (1 - S), 255] with 255 as fixed point.
DitherMatrix scale_toward_white(const DitherMatrix& matrix, double strength);

// Vertical-line matrix before scaling: the central round(stripe_fraction *
// width) columns carry the triangle round(255 |2c/(s-1) - 1|) (0 in the
// middle for odd s, 255 at the stripe edges); every other column is 255.
DitherMatrix build_vertical_stripe(int width, int height, const CrosshatchParams& params);

// Merges the horizontal-line matrix with the scaled stripe matrix s.
// Top and bottom bands (round(white_band/2 * h) rows each):
//     min(h, s)        -- lowers thresholds on the stripe: white cross-hatch
// Middle band:
//     max(h, 255 - s)  -- raises thresholds on the stripe: black cross-hatch
// Off-stripe s == 255, so both operations leave those columns untouched.
DitherMatrix combine(const DitherMatrix& horizontal, const DitherMatrix& stripe_scaled,
                     const CrosshatchParams& params);

// Rank-order remap into [1, 255]: the entry of rank k (ties broken by
// row-major position) gets 1 + round(254 k / (N - 1)). A constant input is
// still spread over the full range but a warning is written to stderr.
DitherMatrix equalize(const DitherMatrix& matrix);

/// horizontal + stripe + scale + combine + equalize at the base resolution.
DitherMatrix build_crosshatch_matrix(const CrosshatchParams& params);

// Area-average (shrinking) or wrap-around bilinear (enlarging) resampling of
// the threshold grid followed by re-equalisation. The new period is
// round(factor * period) in each direction and must be at least 2x2.
DitherMatrix resample_matrix(const DitherMatrix& matrix, double factor);
DitherMatrix resample_matrix_to(const DitherMatrix& matrix, int period_w, int period_h);

/// Cyclic row rotation: row r of the result is row (r + rows) mod period_h.
DitherMatrix shift_rows(const DitherMatrix& matrix, int rows);

/// shift_rows by round(shift * period_h); shift in [0, 1).
DitherMatrix shift_vertical(const DitherMatrix& matrix, double shift);

} // namespace engrave
