#include "engrave/raster.hpp"

#include <algorithm>

namespace engrave {

Field to_field(const Image& image)
{
    Field out(image.width(), image.height(), image.channels());
    std::ranges::transform(image.samples(), out.samples().begin(),
                           [](std::uint8_t v) { return static_cast<double>(v); });
    return out;
}

Image quantize(const Field& field)
{
    Image out(field.width(), field.height(), field.channels());
    std::ranges::transform(field.samples(), out.samples().begin(), [](double v) { return to_byte(v); });
    return out;
}

Field to_unit(const Image& image)
{
    Field out(image.width(), image.height(), image.channels());
    std::ranges::transform(image.samples(), out.samples().begin(),
                           [](std::uint8_t v) { return static_cast<double>(v) / 255.0; });
    return out;
}

Image from_unit(const Field& unit)
{
    Image out(unit.width(), unit.height(), unit.channels());
    std::ranges::transform(unit.samples(), out.samples().begin(),
                           [](double v) { return to_byte(std::clamp(v, 0.0, 1.0) * 255.0); });
    return out;
}

} // namespace engrave
