#include "engrave/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace engrave {
namespace {

struct Tap {
    int index;
    double weight;
};

// Source taps contributing to each destination sample along one axis.
std::vector<std::vector<Tap>> area_weights(int src, int dst)
{
    std::vector<std::vector<Tap>> out(static_cast<std::size_t>(dst));
    const double scale = static_cast<double>(src) / dst;
    for (int i = 0; i < dst; ++i) {
        const double lo = i * scale;
        const double hi = (i + 1) * scale;
        for (int s = static_cast<int>(std::floor(lo)); s < src && s < hi; ++s) {
            const double overlap = std::min<double>(hi, s + 1) - std::max<double>(lo, s);
            if (overlap > 0.0)
                out[static_cast<std::size_t>(i)].push_back({s, overlap / scale});
        }
    }
    return out;
}

std::vector<std::vector<Tap>> bilinear_weights(int src, int dst)
{
    std::vector<std::vector<Tap>> out(static_cast<std::size_t>(dst));
    const double scale = static_cast<double>(src) / dst;
    for (int i = 0; i < dst; ++i) {
        const double pos = std::clamp((i + 0.5) * scale - 0.5, 0.0, static_cast<double>(src - 1));
        const int i0 = static_cast<int>(std::floor(pos));
        const int i1 = std::min(i0 + 1, src - 1);
        const double f = pos - i0;
        auto& taps = out[static_cast<std::size_t>(i)];
        taps.push_back({i0, 1.0 - f});
        if (f > 0.0)
            taps.push_back({i1, f});
    }
    return out;
}

Field apply_separable(const Field& src, const std::vector<std::vector<Tap>>& wx,
                      const std::vector<std::vector<Tap>>& wy)
{
    const int dw = static_cast<int>(wx.size());
    const int dh = static_cast<int>(wy.size());
    const int ch = src.channels();
    Field tmp(dw, src.height(), ch);
    for (int y = 0; y < src.height(); ++y)
        for (int x = 0; x < dw; ++x)
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (const Tap& t : wx[static_cast<std::size_t>(x)])
                    acc += t.weight * src.at(t.index, y, c);
                tmp.at(x, y, c) = acc;
            }
    Field out(dw, dh, ch);
    for (int y = 0; y < dh; ++y)
        for (int x = 0; x < dw; ++x)
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (const Tap& t : wy[static_cast<std::size_t>(y)])
                    acc += t.weight * tmp.at(x, t.index, c);
                out.at(x, y, c) = acc;
            }
    return out;
}

std::vector<double> gaussian_kernel(double sigma)
{
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
        k[static_cast<std::size_t>(i + radius)] = v;
        sum += v;
    }
    for (double& v : k)
        v /= sum;
    return k;
}

Field blur_horizontal(const Field& src, double sigma)
{
    if (sigma <= 0.0)
        return src;
    const auto k = gaussian_kernel(sigma);
    const int r = static_cast<int>(k.size() / 2);
    const int w = src.width();
    Field out(w, src.height(), src.channels());
    for (int y = 0; y < src.height(); ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < src.channels(); ++c) {
                double acc = 0.0;
                for (int i = -r; i <= r; ++i)
                    acc += k[static_cast<std::size_t>(i + r)] * src.at(std::clamp(x + i, 0, w - 1), y, c);
                out.at(x, y, c) = acc;
            }
    return out;
}

Field blur_vertical(const Field& src, double sigma)
{
    if (sigma <= 0.0)
        return src;
    const auto k = gaussian_kernel(sigma);
    const int r = static_cast<int>(k.size() / 2);
    const int h = src.height();
    const int rowlen = src.width() * src.channels();
    Field out(src.width(), h, src.channels());
    for (int y = 0; y < h; ++y) {
        auto dst = out.row(y);
        for (int i = -r; i <= r; ++i) {
            const double kw = k[static_cast<std::size_t>(i + r)];
            auto s = src.row(std::clamp(y + i, 0, h - 1));
            for (int j = 0; j < rowlen; ++j)
                dst[static_cast<std::size_t>(j)] += kw * s[static_cast<std::size_t>(j)];
        }
    }
    return out;
}

void check_sigma(double sigma, const char* what)
{
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw InputError(std::string(what) + ": sigma must be finite and >= 0");
}

// Samples `src` onto a canvas of the given size: canvas pixel p reads source
// position src_center + R(-angle)(p - dst_center), clamped to the border.
Field rotate_onto(const Field& src, double angle, int width, int height, Point src_center, Point dst_center)
{
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    Field out(width, height, src.channels());
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const double dx = x - dst_center.x;
            const double dy = y - dst_center.y;
            const double sx = src_center.x + cs * dx + sn * dy;
            const double sy = src_center.y - sn * dx + cs * dy;
            for (int c = 0; c < src.channels(); ++c)
                out.at(x, y, c) = sample_bilinear(src, sx, sy, c);
        }
    return out;
}

} // namespace

Image to_gray(const Image& colour)
{
    if (colour.channels() != 3)
        throw InputError("to_gray: expected a 3-channel image");
    Image out(colour.width(), colour.height(), 1);
    for (int y = 0; y < colour.height(); ++y)
        for (int x = 0; x < colour.width(); ++x)
            out.at(x, y) = to_byte(0.299 * colour.at(x, y, 0) + 0.587 * colour.at(x, y, 1) +
                                   0.114 * colour.at(x, y, 2));
    return out;
}

Image to_rgb(const Image& image)
{
    if (image.channels() == 3)
        return image;
    return merge_channels(image, image, image);
}

Field resample(const Field& src, int new_width, int new_height, ResampleMode mode)
{
    if (new_width < 1 || new_height < 1)
        throw InputError("resample: target dimensions must be >= 1");
    if (src.empty())
        throw InputError("resample: empty source");
    if (new_width == src.width() && new_height == src.height())
        return src;
    if (mode == ResampleMode::bilinear)
        return apply_separable(src, bilinear_weights(src.width(), new_width),
                               bilinear_weights(src.height(), new_height));
    return apply_separable(src, area_weights(src.width(), new_width), area_weights(src.height(), new_height));
}

Image resample(const Image& src, int new_width, int new_height, ResampleMode mode)
{
    if (new_width == src.width() && new_height == src.height())
        return src;
    return quantize(resample(to_field(src), new_width, new_height, mode));
}

double sample_bilinear(const Field& src, double x, double y, int c)
{
    x = std::clamp(x, 0.0, static_cast<double>(src.width() - 1));
    y = std::clamp(y, 0.0, static_cast<double>(src.height() - 1));
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const int x1 = std::min(x0 + 1, src.width() - 1);
    const int y1 = std::min(y0 + 1, src.height() - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double top = (1.0 - fx) * src.at(x0, y0, c) + fx * src.at(x1, y0, c);
    const double bottom = (1.0 - fx) * src.at(x0, y1, c) + fx * src.at(x1, y1, c);
    return (1.0 - fy) * top + fy * bottom;
}

Field rotate(const Field& src, Angle angle, Point center, double fill)
{
    const double a = angle.normalized().radians;
    if (a == 0.0)
        return src;
    const double cs = std::cos(a);
    const double sn = std::sin(a);
    const double max_x = src.width() - 0.5;
    const double max_y = src.height() - 0.5;
    Field out(src.width(), src.height(), src.channels(), fill);
    for (int y = 0; y < src.height(); ++y)
        for (int x = 0; x < src.width(); ++x) {
            const double dx = x - center.x;
            const double dy = y - center.y;
            const double sx = center.x + cs * dx + sn * dy;
            const double sy = center.y - sn * dx + cs * dy;
            if (sx < -0.5 || sy < -0.5 || sx > max_x || sy > max_y)
                continue;
            for (int c = 0; c < src.channels(); ++c)
                out.at(x, y, c) = sample_bilinear(src, sx, sy, c);
        }
    return out;
}

Image rotate(const Image& src, Angle angle, Point center, std::uint8_t fill)
{
    if (angle.normalized().radians == 0.0)
        return src;
    return quantize(rotate(to_field(src), angle, center, static_cast<double>(fill)));
}

Field gaussian_blur(const Field& src, double sigma)
{
    return gaussian_blur_xy(src, sigma, sigma);
}

Image gaussian_blur(const Image& src, double sigma)
{
    check_sigma(sigma, "gaussian_blur");
    if (sigma == 0.0)
        return src;
    return quantize(gaussian_blur(to_field(src), sigma));
}

Field gaussian_blur_xy(const Field& src, double sigma_x, double sigma_y)
{
    check_sigma(sigma_x, "gaussian_blur");
    check_sigma(sigma_y, "gaussian_blur");
    return blur_vertical(blur_horizontal(src, sigma_x), sigma_y);
}

Field oriented_gaussian_blur(const Field& src, double sigma_along, double sigma_across, Angle axis)
{
    check_sigma(sigma_along, "oriented_gaussian_blur");
    check_sigma(sigma_across, "oriented_gaussian_blur");
    if (sigma_along == sigma_across)
        return gaussian_blur(src, sigma_along);

    const double phi = axis.normalized().radians;
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    constexpr double eps = 1e-12;
    if (std::abs(c) < eps)
        return gaussian_blur_xy(src, sigma_across, sigma_along);
    if (std::abs(s) < eps)
        return gaussian_blur_xy(src, sigma_along, sigma_across);

    // Turn the content by psi so the major axis ends up vertical.
    const double psi = std::numbers::pi / 2.0 - phi;
    const double w = src.width();
    const double h = src.height();
    const int cw = static_cast<int>(std::ceil(std::abs(w * std::cos(psi)) + std::abs(h * std::sin(psi)))) + 2;
    const int chh = static_cast<int>(std::ceil(std::abs(w * std::sin(psi)) + std::abs(h * std::cos(psi)))) + 2;
    const Point src_center{(w - 1.0) / 2.0, (h - 1.0) / 2.0};
    const Point canvas_center{(cw - 1.0) / 2.0, (chh - 1.0) / 2.0};

    Field canvas = rotate_onto(src, psi, cw, chh, src_center, canvas_center);
    canvas = gaussian_blur_xy(canvas, sigma_across, sigma_along);
    return rotate_onto(canvas, -psi, src.width(), src.height(), canvas_center, src_center);
}

Image oriented_gaussian_blur(const Image& src, double sigma_along, double sigma_across, Angle axis)
{
    return quantize(oriented_gaussian_blur(to_field(src), sigma_along, sigma_across, axis));
}

Image scale_saturation(const Image& colour, double factor)
{
    if (colour.channels() != 3)
        throw InputError("scale_saturation: expected a 3-channel image");
    if (!(factor >= 0.0) || !std::isfinite(factor))
        throw InputError("scale_saturation: factor must be finite and >= 0");
    Image out = colour;
    for (int y = 0; y < colour.height(); ++y)
        for (int x = 0; x < colour.width(); ++x) {
            const double r = colour.at(x, y, 0), g = colour.at(x, y, 1), b = colour.at(x, y, 2);
            const double v = std::max({r, g, b});
            const double m = std::min({r, g, b});
            if (v <= 0.0 || v == m)
                continue;
            const double sat = (v - m) / v;
            const double ratio = std::min(1.0, factor * sat) / sat;
            // At fixed hue and value every channel is V - (V - c) scaled
            // linearly with S, which is the HSV round trip in closed form.
            for (int c = 0; c < 3; ++c)
                out.at(x, y, c) = to_byte(v - (v - colour.at(x, y, c)) * ratio);
        }
    return out;
}

} // namespace engrave
