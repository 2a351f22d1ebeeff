#pragma once

#include <filesystem>

#include "engrave/raster.hpp"

namespace engrave {

// Reads 8/16-bit gray or RGB PNG and binary PGM/PPM (P5/P6). The format is
// chosen from the file signature, not the extension. 16-bit samples are
// mapped to 8 bits by integer division by 257. Palette PNGs are expanded to
// RGB; an alpha channel, if present, is dropped.
Image load_image(const std::filesystem::path& path);

// Writes 8-bit PNG (".png") or binary PGM/PPM (anything else). Single-channel
// rasters become gray, three-channel rasters RGB.
void save_image(const Image& image, const std::filesystem::path& path);

// Unit-domain rasters are quantized with round(v * 255) before writing.
void save_image(const Field& unit, const std::filesystem::path& path);

} // namespace engrave
