#include "engrave/colour.hpp"

#include <algorithm>
#include <cmath>

#include "engrave/filters.hpp"

namespace engrave {

ColourMode parse_colour_mode(std::string_view name)
{
    if (name == "mask")
        return ColourMode::mask;
    if (name == "mask-darkened" || name == "mask_darkened")
        return ColourMode::mask_darkened;
    if (name == "sep-same" || name == "separation_same")
        return ColourMode::separation_same;
    if (name == "sep-shifted" || name == "separation_shifted")
        return ColourMode::separation_shifted;
    throw InputError("unknown colour mode \"" + std::string(name) +
                     "\" (expected mask, mask-darkened, sep-same or sep-shifted)");
}

std::string to_string(ColourMode mode)
{
    switch (mode) {
    case ColourMode::mask:
        return "mask";
    case ColourMode::mask_darkened:
        return "mask-darkened";
    case ColourMode::separation_same:
        return "sep-same";
    case ColourMode::separation_shifted:
        return "sep-shifted";
    }
    return "mask";
}

void ColourParams::validate() const
{
    if (!(blur_sigma >= 0.0) || !std::isfinite(blur_sigma))
        throw InputError("colour blur sigma must be finite and >= 0");
    if (!(darken > 0.0 && darken <= 1.0))
        throw InputError("darken must lie in (0, 1]");
    if (!(sat_boost >= 1.0) || !std::isfinite(sat_boost))
        throw InputError("saturation boost must be finite and >= 1");
    for (double s : shifts)
        if (!(s >= 0.0 && s < 1.0))
            throw InputError("matrix shifts must lie in [0, 1)");
}

Image colour_mask(const Image& colour, const Image& engraving, double blur_sigma)
{
    if (colour.channels() != 3)
        throw InputError("colour_mask: expected a 3-channel colour image");
    if (engraving.channels() != 1 || !engraving.same_size(colour))
        throw InputError("colour_mask: engraving must be single-channel and match the colour image size");
    Image out = gaussian_blur(colour, blur_sigma);
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x)
            for (int c = 0; c < 3; ++c)
                out.at(x, y, c) = std::max(out.at(x, y, c), engraving.at(x, y));
    return out;
}

Image darken(const Image& image, double factor)
{
    Image out = image;
    for (auto& v : out.samples())
        v = to_byte(factor * v);
    return out;
}

Image colour_mask_darkened(const Image& colour, const EngraveFn& engrave, double darken_factor, double sat_boost,
                           double blur_sigma)
{
    if (!(darken_factor > 0.0 && darken_factor <= 1.0))
        throw InputError("darken must lie in (0, 1]");
    const Image dark = darken(colour, darken_factor);
    const Image engraving = engrave(to_gray(dark));
    return scale_saturation(colour_mask(dark, engraving, blur_sigma), sat_boost);
}

Image colour_separation(const Image& colour, const DitherMatrix& matrix_hi, const OffsetField& offsets,
                        const std::array<double, 3>& shifts, int k)
{
    if (colour.channels() != 3)
        throw InputError("colour_separation: expected a 3-channel colour image");
    if (k < 1)
        throw InputError("supersampling factor k must be >= 1");
    const int period = matrix_hi.period_h() / k;
    std::array<Image, 3> planes;
    for (int c = 0; c < 3; ++c) {
        const double s = shifts[static_cast<std::size_t>(c)];
        if (!(s >= 0.0 && s < 1.0))
            throw InputError("matrix shifts must lie in [0, 1)");
        // whole output rows, so each channel is an exact translate of the others
        const int rows = k * static_cast<int>(std::round(s * period));
        planes[static_cast<std::size_t>(c)] = warped_dither(channel(colour, c), shift_rows(matrix_hi, rows), offsets, k);
    }
    return merge_channels(planes[0], planes[1], planes[2]);
}

} // namespace engrave
