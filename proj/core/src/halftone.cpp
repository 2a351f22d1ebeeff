#include "engrave/halftone.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "engrave/filters.hpp"

namespace engrave {
namespace {

// Bilinear enlargement by k, expressed per destination coordinate. Matches
// resample(..., ResampleMode::bilinear) exactly.
struct LerpTap {
    int i0;
    int i1;
    double f;
};

std::vector<LerpTap> upsample_taps(int src, int k)
{
    std::vector<LerpTap> taps(static_cast<std::size_t>(src) * static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < taps.size(); ++i) {
        const double pos = std::clamp((static_cast<double>(i) + 0.5) / k - 0.5, 0.0, static_cast<double>(src - 1));
        const int i0 = static_cast<int>(pos);
        taps[i] = {i0, std::min(i0 + 1, src - 1), pos - i0};
    }
    return taps;
}

double lerp2(const Field& f, const LerpTap& tx, const LerpTap& ty)
{
    const double top = (1.0 - tx.f) * f.at(tx.i0, ty.i0) + tx.f * f.at(tx.i1, ty.i0);
    const double bot = (1.0 - tx.f) * f.at(tx.i0, ty.i1) + tx.f * f.at(tx.i1, ty.i1);
    return (1.0 - ty.f) * top + ty.f * bot;
}

void check_inputs(const Image& gray, const DitherMatrix& matrix, int k)
{
    if (gray.channels() != 1)
        throw InputError("dithering expects a single-channel image");
    if (gray.empty())
        throw InputError("dithering an empty image");
    if (!matrix.finalised())
        throw InputError("dithering requires a finalised (equalised) matrix");
    if (k < 1)
        throw InputError("supersampling factor k must be >= 1, got " + std::to_string(k));
}

Image dither_kernel(const Image& gray, const DitherMatrix& matrix, const Field* offsets, int k)
{
    const int w = gray.width();
    const int h = gray.height();
    const Field tone = to_field(gray);
    const auto tx = upsample_taps(w, k);
    const auto ty = upsample_taps(h, k);
    const int pw = matrix.period_w();
    const int ph = matrix.period_h();
    const double kk = static_cast<double>(k) * k;

    Image out(w, h, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int white = 0;
            for (int j = 0; j < k; ++j) {
                const int Y = y * k + j;
                const LerpTap& rt = ty[static_cast<std::size_t>(Y)];
                for (int i = 0; i < k; ++i) {
                    const int X = x * k + i;
                    const LerpTap& ct = tx[static_cast<std::size_t>(X)];
                    const double g = lerp2(tone, ct, rt);
                    const int col = DitherMatrix::wrap(X, pw);
                    double threshold;
                    const double dy = offsets ? lerp2(*offsets, ct, rt) * k : 0.0;
                    if (dy == 0.0) {
                        threshold = matrix.at(col, DitherMatrix::wrap(Y, ph));
                    } else {
                        const double row = Y + dy;
                        const double r0 = std::floor(row);
                        const double f = row - r0;
                        const int r = DitherMatrix::wrap(static_cast<int>(r0), ph);
                        threshold = matrix.at(col, r);
                        if (f > 0.0)
                            threshold = (1.0 - f) * threshold + f * matrix.at(col, DitherMatrix::wrap(r + 1, ph));
                    }
                    if (g >= threshold)
                        ++white;
                }
            }
            out.at(x, y) = k == 1 ? static_cast<std::uint8_t>(white ? 255 : 0) : to_byte(255.0 * white / kk);
        }
    }
    return out;
}

} // namespace

OffsetField::OffsetField(Field dy) : dy_(std::move(dy))
{
    if (dy_.channels() != 1)
        throw InvariantError("offset field must be single-channel");
    if (std::ranges::any_of(dy_.samples(), [](double v) { return !std::isfinite(v); }))
        throw InvariantError("offset field contains non-finite values");
}

Image dither(const Image& gray, const DitherMatrix& matrix)
{
    check_inputs(gray, matrix, 1);
    Image out(gray.width(), gray.height(), 1);
    for (int y = 0; y < gray.height(); ++y)
        for (int x = 0; x < gray.width(); ++x)
            out.at(x, y) = gray.at(x, y) >= matrix.tiled(x, y) ? 255 : 0;
    return out;
}

Image supersampled_dither(const Image& gray, const DitherMatrix& matrix_hi, int k)
{
    check_inputs(gray, matrix_hi, k);
    return dither_kernel(gray, matrix_hi, nullptr, k);
}

Image warped_dither(const Image& gray, const DitherMatrix& matrix_hi, const OffsetField& offsets, int k)
{
    check_inputs(gray, matrix_hi, k);
    if (offsets.width() != gray.width() || offsets.height() != gray.height())
        throw InputError("offset field size does not match the image");
    return dither_kernel(gray, matrix_hi, &offsets.dy(), k);
}

Image engrave_rotated(const Image& gray, const DitherMatrix& matrix_hi, const OffsetField& offsets, Angle roll,
                      Point center, int k)
{
    const Angle r = roll.normalized();
    if (r.radians == 0.0)
        return warped_dither(gray, matrix_hi, offsets, k);
    const Image upright = rotate(gray, Angle{-r.radians}, center, 255);
    const Image engraved = warped_dither(upright, matrix_hi, offsets, k);
    return rotate(engraved, r, center, 255);
}

} // namespace engrave
