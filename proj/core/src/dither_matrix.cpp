#include "engrave/dither_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <string>

#include "engrave/filters.hpp"

namespace engrave {

DitherMatrix::DitherMatrix(int period_w, int period_h, std::vector<std::uint8_t> thresholds, bool finalised)
    : period_w_(period_w), period_h_(period_h), thresholds_(std::move(thresholds)), finalised_(finalised)
{
    if (period_w_ < 1 || period_h_ < 1)
        throw InputError("dither matrix period must be at least 1x1");
    if (thresholds_.size() != static_cast<std::size_t>(period_w_) * static_cast<std::size_t>(period_h_))
        throw InvariantError("dither matrix threshold count does not match its period");
    if (finalised_ && std::ranges::any_of(thresholds_, [](std::uint8_t v) { return v == 0; }))
        throw InvariantError("finalised dither matrix contains a zero threshold");
}

DitherMatrix DitherMatrix::from_image(const Image& image)
{
    if (image.channels() != 1)
        throw InputError("dither matrix image must be single-channel");
    if (image.empty())
        throw InputError("dither matrix image is empty");
    std::vector<std::uint8_t> t(image.samples().begin(), image.samples().end());
    const bool fin = std::ranges::none_of(t, [](std::uint8_t v) { return v == 0; });
    return DitherMatrix(image.width(), image.height(), std::move(t), fin);
}

Image DitherMatrix::to_image() const
{
    return Image(period_w_, period_h_, 1, thresholds_);
}

void CrosshatchParams::validate() const
{
    if (!(strength >= 0.0 && strength <= 0.5))
        throw InputError("cross-hatch strength S must lie in [0, 0.5]");
    if (!(stripe_fraction > 0.0 && stripe_fraction <= 1.0))
        throw InputError("stripe fraction must lie in (0, 1]");
    if (!(white_band > 0.0 && white_band < 1.0))
        throw InputError("white band must lie in (0, 1)");
    if (base_width < 3)
        throw InputError("base matrix width must be >= 3");
    if (base_height < 3 || base_height % 2 == 0)
        throw InputError("base matrix height must be odd and >= 3");
}

DitherMatrix build_horizontal_profile(int height, int width)
{
    if (height < 3 || height % 2 == 0)
        throw InputError("horizontal profile height must be odd and >= 3, got " + std::to_string(height));
    if (width < 1)
        throw InputError("horizontal profile width must be >= 1");
    std::vector<std::uint8_t> t(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    const double span = height - 1;
    for (int r = 0; r < height; ++r) {
        const auto v = to_byte(255.0 * std::abs(2.0 * r - span) / span);
        std::fill_n(t.begin() + static_cast<std::ptrdiff_t>(r) * width, width, v);
    }
    return DitherMatrix(width, height, std::move(t));
}

DitherMatrix scale_toward_white(const DitherMatrix& matrix, double strength)
{
    if (!(strength >= 0.0 && strength <= 1.0))
        throw InputError("scale_toward_white: S must lie in [0, 1]");
    std::vector<std::uint8_t> t(matrix.thresholds().begin(), matrix.thresholds().end());
    for (auto& v : t)
        v = to_byte(255.0 - strength * (255.0 - v));
    return DitherMatrix(matrix.period_w(), matrix.period_h(), std::move(t));
}

DitherMatrix build_vertical_stripe(int width, int height, const CrosshatchParams& params)
{
    if (width < 3)
        throw InputError("vertical stripe width must be >= 3");
    if (height < 1)
        throw InputError("vertical stripe height must be >= 1");
    if (!(params.stripe_fraction > 0.0))
        throw InputError("stripe fraction must be > 0");
    const int stripe = static_cast<int>(std::round(params.stripe_fraction * width));
    if (stripe > width)
        throw InputError("stripe is wider than the matrix");
    if (stripe < 1)
        throw InputError("stripe fraction leaves no stripe columns");

    std::vector<std::uint8_t> profile(static_cast<std::size_t>(width), 255);
    const int first = (width - stripe) / 2;
    for (int c = 0; c < stripe; ++c) {
        const double v = stripe == 1 ? 0.0 : 255.0 * std::abs(2.0 * c / (stripe - 1) - 1.0);
        profile[static_cast<std::size_t>(first + c)] = to_byte(v);
    }
    std::vector<std::uint8_t> t;
    t.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (int r = 0; r < height; ++r)
        t.insert(t.end(), profile.begin(), profile.end());
    return DitherMatrix(width, height, std::move(t));
}

DitherMatrix combine(const DitherMatrix& horizontal, const DitherMatrix& stripe_scaled, const CrosshatchParams& params)
{
    if (horizontal.period_w() != stripe_scaled.period_w() || horizontal.period_h() != stripe_scaled.period_h())
        throw InputError("combine: matrices must share their period");
    if (!(params.white_band > 0.0 && params.white_band < 1.0))
        throw InputError("white band must lie in (0, 1)");
    const int w = horizontal.period_w();
    const int h = horizontal.period_h();
    const int band = static_cast<int>(std::round(params.white_band / 2.0 * h));

    std::vector<std::uint8_t> t(horizontal.size());
    for (int r = 0; r < h; ++r) {
        const bool outer = r < band || r >= h - band;
        for (int c = 0; c < w; ++c) {
            const std::uint8_t hv = horizontal.at(c, r);
            const std::uint8_t sv = stripe_scaled.at(c, r);
            t[static_cast<std::size_t>(r) * w + c] =
                outer ? std::min(hv, sv) : std::max<std::uint8_t>(hv, static_cast<std::uint8_t>(255 - sv));
        }
    }
    return DitherMatrix(w, h, std::move(t));
}

DitherMatrix equalize(const DitherMatrix& matrix)
{
    const auto src = matrix.thresholds();
    const std::size_t n = src.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return src[a] < src[b]; });

    if (n > 1 && std::ranges::all_of(src, [&](std::uint8_t v) { return v == src[0]; }))
        std::cerr << "engrave: warning: equalising a constant dither matrix; ranks follow position only\n";

    std::vector<std::uint8_t> t(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double v = n == 1 ? 128.0 : 1.0 + std::round(254.0 * static_cast<double>(k) / static_cast<double>(n - 1));
        t[order[k]] = static_cast<std::uint8_t>(v);
    }
    return DitherMatrix(matrix.period_w(), matrix.period_h(), std::move(t), true);
}

DitherMatrix build_crosshatch_matrix(const CrosshatchParams& params)
{
    params.validate();
    const auto horizontal = build_horizontal_profile(params.base_height, params.base_width);
    const auto stripe = build_vertical_stripe(params.base_width, params.base_height, params);
    const auto scaled = scale_toward_white(stripe, params.strength);
    return equalize(combine(horizontal, scaled, params));
}

DitherMatrix resample_matrix_to(const DitherMatrix& matrix, int period_w, int period_h)
{
    if (period_w < 2 || period_h < 2)
        throw InputError("resampled dither matrix period must be at least 2x2");

    const int sw = matrix.period_w();
    const int sh = matrix.period_h();
    Field src(sw, sh, 1);
    std::ranges::transform(matrix.thresholds(), src.samples().begin(),
                           [](std::uint8_t v) { return static_cast<double>(v); });

    // Enlarge the growing axes with wrap-around bilinear so the result still
    // tiles, then box-average any shrinking axis down to the target.
    const int gw = std::max(period_w, sw);
    const int gh = std::max(period_h, sh);
    Field grown = src;
    if (gw != sw || gh != sh) {
        grown = Field(gw, gh, 1);
        for (int y = 0; y < gh; ++y) {
            const double sy = (y + 0.5) * sh / gh - 0.5;
            const int y0 = static_cast<int>(std::floor(sy));
            const double fy = sy - y0;
            for (int x = 0; x < gw; ++x) {
                const double sx = (x + 0.5) * sw / gw - 0.5;
                const int x0 = static_cast<int>(std::floor(sx));
                const double fx = sx - x0;
                const double top = (1 - fx) * matrix.tiled(x0, y0) + fx * matrix.tiled(x0 + 1, y0);
                const double bot = (1 - fx) * matrix.tiled(x0, y0 + 1) + fx * matrix.tiled(x0 + 1, y0 + 1);
                grown.at(x, y) = (1 - fy) * top + fy * bot;
            }
        }
    }
    const Field out = resample(grown, period_w, period_h, ResampleMode::area_average);

    std::vector<std::uint8_t> t(out.samples().size());
    std::ranges::transform(out.samples(), t.begin(), [](double v) { return to_byte(v); });
    return equalize(DitherMatrix(period_w, period_h, std::move(t)));
}

DitherMatrix resample_matrix(const DitherMatrix& matrix, double factor)
{
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw InputError("resample_matrix: factor must be finite and > 0");
    const int w = static_cast<int>(std::round(factor * matrix.period_w()));
    const int h = static_cast<int>(std::round(factor * matrix.period_h()));
    return resample_matrix_to(matrix, w, h);
}

DitherMatrix shift_rows(const DitherMatrix& matrix, int rows)
{
    const int w = matrix.period_w();
    const int h = matrix.period_h();
    std::vector<std::uint8_t> t(matrix.size());
    for (int r = 0; r < h; ++r) {
        const int src = DitherMatrix::wrap(r + rows, h);
        std::copy_n(matrix.thresholds().begin() + static_cast<std::ptrdiff_t>(src) * w, w,
                    t.begin() + static_cast<std::ptrdiff_t>(r) * w);
    }
    return DitherMatrix(w, h, std::move(t), matrix.finalised());
}

DitherMatrix shift_vertical(const DitherMatrix& matrix, double shift)
{
    if (!(shift >= 0.0 && shift < 1.0))
        throw InputError("shift_vertical: shift must lie in [0, 1)");
    return shift_rows(matrix, static_cast<int>(std::round(shift * matrix.period_h())));
}

} // namespace engrave
