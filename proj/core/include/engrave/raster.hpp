#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "engrave/error.hpp"

namespace engrave {

/**
 * A 2-D grid of samples with 1 or 3 interleaved channels.
 *
 * Samples are stored row-major, top row first, with the channels of one
 * pixel adjacent. Two instantiations are used throughout the library:
 * `Image` for 8-bit tone data and `Field` for continuous intermediates
 * (unit tones, angles, pixel offsets).
 */
template <typename T>
class Raster {
public:
    using value_type = T;

    Raster() = default;

    Raster(int width, int height, int channels = 1, T fill = T{})
        : width_(width), height_(height), channels_(channels)
    {
        check_shape();
        samples_.assign(pixel_count() * static_cast<std::size_t>(channels_), fill);
    }

    Raster(int width, int height, int channels, std::vector<T> samples)
        : width_(width), height_(height), channels_(channels), samples_(std::move(samples))
    {
        check_shape();
        if (samples_.size() != pixel_count() * static_cast<std::size_t>(channels_))
            throw InvariantError("raster sample count does not match width x height x channels");
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    bool empty() const noexcept { return samples_.empty(); }
    std::size_t pixel_count() const noexcept
    {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    std::size_t index(int x, int y, int c = 0) const noexcept
    {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) *
                   static_cast<std::size_t>(channels_) +
               static_cast<std::size_t>(c);
    }

    T& at(int x, int y, int c = 0) noexcept { return samples_[index(x, y, c)]; }
    const T& at(int x, int y, int c = 0) const noexcept { return samples_[index(x, y, c)]; }

    std::span<T> samples() noexcept { return samples_; }
    std::span<const T> samples() const noexcept { return samples_; }

    std::span<T> row(int y) noexcept
    {
        return std::span<T>(samples_).subspan(index(0, y), static_cast<std::size_t>(width_ * channels_));
    }
    std::span<const T> row(int y) const noexcept
    {
        return std::span<const T>(samples_).subspan(index(0, y), static_cast<std::size_t>(width_ * channels_));
    }

    bool same_shape(const Raster& other) const noexcept
    {
        return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
    }

    template <typename U>
    bool same_size(const Raster<U>& other) const noexcept
    {
        return width_ == other.width() && height_ == other.height();
    }

    bool operator==(const Raster&) const = default;

private:
    void check_shape() const
    {
        if (width_ < 0 || height_ < 0)
            throw InvariantError("raster dimensions must be non-negative");
        if (channels_ != 1 && channels_ != 3)
            throw InvariantError("raster must have 1 or 3 channels");
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 1;
    std::vector<T> samples_;
};

using Image = Raster<std::uint8_t>;
using Field = Raster<double>;

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

/// In-plane angle in radians; image axes are x right, y down.
struct Angle {
    double radians = 0.0;

    static Angle from_degrees(double deg) { return Angle{deg * std::numbers::pi / 180.0}.normalized(); }

    /// Same direction, expressed in (-pi, pi].
    Angle normalized() const
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        double r = std::remainder(radians, two_pi);
        if (r <= -std::numbers::pi)
            r += two_pi;
        return Angle{r};
    }

    double degrees() const { return radians * 180.0 / std::numbers::pi; }
};

/// Round half away from zero and clamp into [0, 255].
inline std::uint8_t to_byte(double v) noexcept
{
    if (!(v > 0.0))
        return 0;
    if (v >= 255.0)
        return 255;
    return static_cast<std::uint8_t>(std::round(v));
}

/// Raw sample values as doubles (no rescaling).
Field to_field(const Image& image);

/// Round each sample half away from zero and clamp into [0, 255].
Image quantize(const Field& field);

/// Integer8 -> Unit domain: v / 255.
Field to_unit(const Image& image);

/// Unit -> Integer8 domain: round(clamp(v, 0, 1) * 255).
Image from_unit(const Field& unit);

/// Extract one channel as a single-channel raster.
template <typename T>
Raster<T> channel(const Raster<T>& src, int c)
{
    Raster<T> out(src.width(), src.height(), 1);
    for (int y = 0; y < src.height(); ++y)
        for (int x = 0; x < src.width(); ++x)
            out.at(x, y) = src.at(x, y, c);
    return out;
}

/// Interleave three single-channel rasters of equal size.
template <typename T>
Raster<T> merge_channels(const Raster<T>& r, const Raster<T>& g, const Raster<T>& b)
{
    if (!r.same_shape(g) || !r.same_shape(b) || r.channels() != 1)
        throw InvariantError("merge_channels: planes must be single-channel and the same size");
    Raster<T> out(r.width(), r.height(), 3);
    for (int y = 0; y < r.height(); ++y)
        for (int x = 0; x < r.width(); ++x) {
            out.at(x, y, 0) = r.at(x, y);
            out.at(x, y, 1) = g.at(x, y);
            out.at(x, y, 2) = b.at(x, y);
        }
    return out;
}

} // namespace engrave
