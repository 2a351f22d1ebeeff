// engrave: portrait engraving by structured ordered dithering.
//
//   engrave matrix  -o matrix.pgm
//   engrave engrave photo.png -o out.png [--landmarks face.json | --depth depth.pgm]
//   engrave colour  photo.png -o out.png --mode sep-shifted [--landmarks face.json]
//   engrave shade   photo.png -o shade.pgm --landmarks face.json
//
// Exit status: 0 success, 2 bad input or arguments, 3 internal error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "engrave/filters.hpp"
#include "engrave/image_io.hpp"
#include "engrave/pipeline.hpp"

namespace {

namespace fs = std::filesystem;
using namespace engrave;

constexpr int exit_input = 2;
constexpr int exit_internal = 3;

struct Options {
    EngravingConfig config;
    std::optional<double> amplitude;
    std::optional<double> colour_blur;
    std::vector<double> shifts{0.0, 1.0 / 3.0, 2.0 / 3.0};
    std::string mode = "mask";

    std::string input;
    std::string output;
    std::string landmarks;
    std::string depth;
    std::string debug_dir;
    std::string save_config;
    std::string hi_output;

    EngravingConfig resolved() const
    {
        EngravingConfig c = config;
        c.amplitude = amplitude;
        c.colour_blur = colour_blur;
        if (shifts.size() != 3)
            throw InputError("--shifts expects three comma-separated values");
        c.shifts = {shifts[0], shifts[1], shifts[2]};
        c.mode = parse_colour_mode(mode);
        c.validate();
        return c;
    }
};

void add_parameters(CLI::App& app, Options& o)
{
    auto& c = o.config;
    app.add_option("--scale-s", c.scale_s, "Cross-hatch strength S in [0, 0.5]")->capture_default_str();
    app.add_option("--period", c.period, "Dither matrix period in pixels")->capture_default_str();
    app.add_option("--white-band", c.white_band, "Share of rows getting white cross-hatch")->capture_default_str();
    app.add_option("--supersample", c.supersample, "Supersampling factor k")->capture_default_str();
    app.add_option("--amplitude", o.amplitude, "Warp amplitude in pixels (default: period)");
    app.add_option("--extend", c.extend, "Upward face mask extension, fraction of face height")
        ->capture_default_str();
    app.add_option("--alpha", c.alpha, "Ambient weight of the shading model")->capture_default_str();
    app.add_option("--blur-strength", c.blur_strength, "Scale of the shading blur")->capture_default_str();
    app.add_flag("--rotate-align", c.rotate_align, "Engrave in a frame rotated upright with the face");
    app.add_option("--mode", o.mode, "Colour mode: mask | mask-darkened | sep-same | sep-shifted")
        ->capture_default_str();
    app.add_option("--darken", c.darken, "Intensity scaling for mask-darkened")->capture_default_str();
    app.add_option("--sat-boost", c.sat_boost, "Saturation factor for mask-darkened")->capture_default_str();
    app.add_option("--shifts", o.shifts, "Per-channel matrix shifts r,g,b (fractions of the period)")
        ->delimiter(',')
        ->expected(3);
    app.add_option("--colour-blur", o.colour_blur, "Blur sigma for the mask modes (default: period/2)");
    app.add_option("--landmarks", o.landmarks, "68-point landmark JSON");
    app.add_option("--depth", o.depth, "Depth map (PGM/PNG, larger = nearer)");
    app.add_option("--debug-dir", o.debug_dir, "Write intermediate rasters here");
    app.add_option("--save-config", o.save_config, "Write the effective parameters to this file");
    app.set_config("--config", "", "Read parameters from a TOML-style key = value file");
}

Geometry load_geometry(const Options& o, const Image& image)
{
    if (!o.landmarks.empty() && !o.depth.empty())
        throw InputError("--landmarks and --depth are mutually exclusive");
    if (!o.landmarks.empty())
        return load_landmarks(o.landmarks, image.width(), image.height());
    if (!o.depth.empty())
        return DepthMap{load_image(o.depth)};
    return NoGeometry{};
}

std::string number(double v)
{
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

// Only the effective parameters and geometry sources are written, at full
// precision, so the file reproduces the run exactly.
void save_config(const Options& o, const std::string& path)
{
    const EngravingConfig c = o.resolved();
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write config file " + path);
    out << "scale-s=" << number(c.scale_s) << '\n'
        << "period=" << c.period << '\n'
        << "white-band=" << number(c.white_band) << '\n'
        << "supersample=" << c.supersample << '\n';
    if (c.amplitude)
        out << "amplitude=" << number(*c.amplitude) << '\n';
    out << "extend=" << number(c.extend) << '\n'
        << "alpha=" << number(c.alpha) << '\n'
        << "blur-strength=" << number(c.blur_strength) << '\n'
        << "rotate-align=" << (c.rotate_align ? "true" : "false") << '\n'
        << "mode=\"" << to_string(c.mode) << "\"\n"
        << "darken=" << number(c.darken) << '\n'
        << "sat-boost=" << number(c.sat_boost) << '\n'
        << "shifts=[" << number(c.shifts[0]) << ',' << number(c.shifts[1]) << ',' << number(c.shifts[2]) << "]\n";
    if (c.colour_blur)
        out << "colour-blur=" << number(*c.colour_blur) << '\n';
    if (!o.landmarks.empty())
        out << "landmarks=\"" << o.landmarks << "\"\n";
    if (!o.depth.empty())
        out << "depth=\"" << o.depth << "\"\n";
}

int run_matrix(const Options& o)
{
    const EngravingConfig config = o.resolved();
    const MatrixSet m = build_matrices(config);
    save_image(m.working.to_image(), o.output);
    if (!o.hi_output.empty())
        save_image(m.hi.to_image(), o.hi_output);
    return 0;
}

int run_engrave(const Options& o)
{
    const EngravingConfig config = o.resolved();
    Image image = load_image(o.input);
    if (image.channels() == 3)
        image = to_gray(image);
    const Geometry geometry = load_geometry(o, image);
    const MatrixSet matrices = build_matrices(config);
    const WarpPlan plan = plan_warp(image.width(), image.height(), geometry, config);
    save_image(engrave_gray(image, plan, matrices), o.output);
    if (!o.debug_dir.empty())
        write_artifacts(plan.artifacts, matrices, config.warp_amplitude(), o.debug_dir);
    return 0;
}

int run_colour(const Options& o)
{
    const EngravingConfig config = o.resolved();
    const Image image = load_image(o.input);
    const Geometry geometry = load_geometry(o, image);
    save_image(engrave_colour(image, geometry, config), o.output);
    if (!o.debug_dir.empty()) {
        const WarpPlan plan = plan_warp(image.width(), image.height(), geometry, config);
        write_artifacts(plan.artifacts, build_matrices(config), config.warp_amplitude(), o.debug_dir);
    }
    return 0;
}

int run_shade(const Options& o)
{
    const EngravingConfig config = o.resolved();
    const Image image = load_image(o.input);
    const Geometry geometry = load_geometry(o, image);
    if (std::holds_alternative<NoGeometry>(geometry))
        throw InputError("shade needs --landmarks or --depth");
    save_image(shade_only(image.width(), image.height(), geometry, config).shade, o.output);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Portrait engraving by structured ordered dithering"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    add_parameters(app, o);

    auto* matrix = app.add_subcommand("matrix", "Export the dither matrix as PGM");
    matrix->add_option("-o,--out", o.output, "Output PGM")->required();
    matrix->add_option("--hi-out", o.hi_output, "Also export the supersampling matrix");

    auto* engrave_cmd = app.add_subcommand("engrave", "Black and white engraving");
    engrave_cmd->add_option("image", o.input, "Input image (PNG/PGM/PPM)")->required();
    engrave_cmd->add_option("-o,--out", o.output, "Output image")->required();

    auto* colour = app.add_subcommand("colour", "Colour engraving");
    colour->add_option("image", o.input, "Input image (PNG/PGM/PPM)")->required();
    colour->add_option("-o,--out", o.output, "Output image")->required();

    auto* shade = app.add_subcommand("shade", "Export the blurred shading field");
    shade->add_option("image", o.input, "Input image (for its size)")->required();
    shade->add_option("-o,--out", o.output, "Output PGM")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }

    try {
        if (!o.save_config.empty())
            save_config(o, o.save_config);
        if (matrix->parsed())
            return run_matrix(o);
        if (engrave_cmd->parsed())
            return run_engrave(o);
        if (colour->parsed())
            return run_colour(o);
        return run_shade(o);
    } catch (const InputError& e) {
        std::cerr << "engrave: " << e.what() << '\n';
        return exit_input;
    } catch (const InvariantError& e) {
        std::cerr << "engrave: internal error: " << e.what() << '\n';
        return exit_internal;
    } catch (const std::exception& e) {
        std::cerr << "engrave: internal error: " << e.what() << '\n';
        return exit_internal;
    }
}
