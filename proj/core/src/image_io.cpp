#include "engrave/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

namespace engrave {
namespace {

using FilePtr = std::unique_ptr<std::FILE, decltype(&std::fclose)>;

FilePtr open_file(const std::filesystem::path& path, const char* mode)
{
    return FilePtr(std::fopen(path.string().c_str(), mode), &std::fclose);
}

std::uint8_t rescale_sample(unsigned v, unsigned maxval)
{
    if (maxval == 255)
        return static_cast<std::uint8_t>(v);
    if (maxval == 65535)
        return static_cast<std::uint8_t>(v / 257);
    return to_byte(static_cast<double>(std::min(v, maxval)) * 255.0 / maxval);
}

// ---- PNM -------------------------------------------------------------------

class PnmReader {
public:
    explicit PnmReader(std::vector<unsigned char> bytes) : bytes_(std::move(bytes)) {}

    Image read(const std::string& name)
    {
        const char kind = static_cast<char>(bytes_[1]);
        pos_ = 2;
        const unsigned width = header_value(name);
        const unsigned height = header_value(name);
        const unsigned maxval = header_value(name);
        if (width == 0 || height == 0)
            throw InputError(name + ": zero-dimension image");
        if (maxval == 0 || maxval > 65535)
            throw InputError(name + ": invalid PNM maxval " + std::to_string(maxval));
        // exactly one whitespace byte separates the header from the raster
        ++pos_;

        const int channels = kind == '6' ? 3 : 1;
        const std::size_t bps = maxval > 255 ? 2 : 1;
        const std::size_t count = static_cast<std::size_t>(width) * height * channels;
        if (pos_ + count * bps > bytes_.size())
            throw InputError(name + ": truncated PNM raster");

        Image out(static_cast<int>(width), static_cast<int>(height), channels);
        auto dst = out.samples();
        for (std::size_t i = 0; i < count; ++i) {
            unsigned v = bytes_[pos_ + i * bps];
            if (bps == 2)
                v = (v << 8) | bytes_[pos_ + i * bps + 1];
            dst[i] = rescale_sample(v, maxval);
        }
        return out;
    }

private:
    unsigned header_value(const std::string& name)
    {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
            throw InputError(name + ": malformed PNM header");
        unsigned long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > (1u << 30))
                throw InputError(name + ": PNM header value out of range");
            ++pos_;
        }
        return static_cast<unsigned>(v);
    }

    std::vector<unsigned char> bytes_;
    std::size_t pos_ = 0;
};

void write_pnm(const Image& image, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot open " + path.string() + " for writing");
    out << (image.channels() == 3 ? "P6" : "P5") << '\n'
        << image.width() << ' ' << image.height() << '\n'
        << "255\n";
    auto s = image.samples();
    out.write(reinterpret_cast<const char*>(s.data()), static_cast<std::streamsize>(s.size()));
    if (!out)
        throw InputError("failed writing " + path.string());
}

// ---- PNG -------------------------------------------------------------------

Image read_png(const std::filesystem::path& path)
{
    const std::string name = path.string();
    FilePtr file = open_file(path, "rb");
    if (!file)
        throw InputError("cannot open " + name);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw InputError("libpng initialisation failed");
    }

    std::vector<png_byte> pixels;
    std::vector<png_bytep> rows;
    png_uint_32 width = 0, height = 0;
    int bit_depth = 0, channels = 0;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw InputError(name + ": corrupt or unsupported PNG");
    }

    png_init_io(png, file.get());
    png_read_info(png, info);

    int color_type = png_get_color_type(png, info);
    bit_depth = png_get_bit_depth(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (color_type & PNG_COLOR_MASK_ALPHA)
        png_set_strip_alpha(png);
    png_read_update_info(png, info);

    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    bit_depth = png_get_bit_depth(png, info);
    channels = png_get_channels(png, info);

    if (width == 0 || height == 0 || (channels != 1 && channels != 3)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw InputError(name + ": unsupported PNG layout");
    }

    const std::size_t rowbytes = png_get_rowbytes(png, info);
    pixels.resize(rowbytes * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y)
        rows[y] = pixels.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    Image out(static_cast<int>(width), static_cast<int>(height), channels);
    auto dst = out.samples();
    if (bit_depth == 16) {
        // network byte order
        for (std::size_t i = 0; i < dst.size(); ++i)
            dst[i] = static_cast<std::uint8_t>(((unsigned{pixels[2 * i]} << 8) | pixels[2 * i + 1]) / 257);
    } else {
        std::copy_n(pixels.begin(), dst.size(), dst.begin());
    }
    return out;
}

void write_png(const Image& image, const std::filesystem::path& path)
{
    const std::string name = path.string();
    FilePtr file = open_file(path, "wb");
    if (!file)
        throw InputError("cannot open " + name + " for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw InputError("libpng initialisation failed");
    }
    std::vector<png_bytep> rows(static_cast<std::size_t>(image.height()));
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw InputError("failed writing " + name);
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()), static_cast<png_uint_32>(image.height()), 8,
                 image.channels() == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < image.height(); ++y)
        rows[static_cast<std::size_t>(y)] = const_cast<png_bytep>(image.row(y).data());
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

bool has_png_extension(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::ranges::transform(ext, ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png";
}

} // namespace

Image load_image(const std::filesystem::path& path)
{
    const std::string name = path.string();
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + name);
    std::array<unsigned char, 8> sig{};
    in.read(reinterpret_cast<char*>(sig.data()), sig.size());
    const auto got = static_cast<std::size_t>(in.gcount());

    if (got == sig.size() && png_sig_cmp(sig.data(), 0, sig.size()) == 0) {
        in.close();
        return read_png(path);
    }
    if (got >= 2 && sig[0] == 'P' && (sig[1] == '5' || sig[1] == '6')) {
        in.seekg(0);
        std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return PnmReader(std::move(bytes)).read(name);
    }
    throw InputError(name + ": unsupported image format (expected PNG or binary PGM/PPM)");
}

void save_image(const Image& image, const std::filesystem::path& path)
{
    if (image.empty())
        throw InvariantError("refusing to save an empty raster");
    if (has_png_extension(path))
        write_png(image, path);
    else
        write_pnm(image, path);
}

void save_image(const Field& unit, const std::filesystem::path& path)
{
    save_image(from_unit(unit), path);
}

} // namespace engrave
