#include "engrave/face_proxy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "engrave/filters.hpp"

namespace engrave {
namespace {

constexpr double half_pi = std::numbers::pi / 2.0;

Point centroid(const std::array<Point, landmark_count>& pts, int first, int last)
{
    Point c;
    for (int i = first; i <= last; ++i) {
        c.x += pts[static_cast<std::size_t>(i)].x;
        c.y += pts[static_cast<std::size_t>(i)].y;
    }
    const double n = last - first + 1;
    return {c.x / n, c.y / n};
}

double cross(Point o, Point a, Point b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; counter-clockwise in a y-up sense, no duplicates.
std::vector<Point> convex_hull(std::vector<Point> pts)
{
    std::ranges::sort(pts, [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
        return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0)
            --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i > 0; --i) {
        const Point& p = pts[i - 1];
        while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 0)
            --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

double polygon_area(const std::vector<Point>& poly)
{
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % poly.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return std::abs(a) / 2.0;
}

// 1-D squared distance transform (Felzenszwalb & Huttenlocher). Foreground
// samples carry `far`, a finite stand-in for infinity.
constexpr double far = 1e20;

void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v, std::vector<double>& z)
{
    const int n = static_cast<int>(f.size());
    auto fs = [&](int q) { return f[static_cast<std::size_t>(q)] + static_cast<double>(q) * q; };
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s = (fs(q) - fs(v[static_cast<std::size_t>(k)])) / (2.0 * (q - v[static_cast<std::size_t>(k)]));
        while (s <= z[static_cast<std::size_t>(k)]) {
            --k;
            s = (fs(q) - fs(v[static_cast<std::size_t>(k)])) / (2.0 * (q - v[static_cast<std::size_t>(k)]));
        }
        ++k;
        v[static_cast<std::size_t>(k)] = q;
        z[static_cast<std::size_t>(k)] = s;
        z[static_cast<std::size_t>(k) + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[static_cast<std::size_t>(k) + 1] < q)
            ++k;
        const int p = v[static_cast<std::size_t>(k)];
        d[static_cast<std::size_t>(q)] = static_cast<double>(q - p) * (q - p) + f[static_cast<std::size_t>(p)];
    }
}

void check_alpha(double alpha)
{
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw InputError("ambient weight alpha must lie in [0, 1)");
}

} // namespace

Angle roll_from_eyes(const std::array<Point, landmark_count>& points)
{
    const Point right = centroid(points, landmark::right_eye_first, landmark::right_eye_last);
    const Point left = centroid(points, landmark::left_eye_first, landmark::left_eye_last);
    return Angle{std::atan2(left.y - right.y, left.x - right.x)}.normalized();
}

LandmarkSet parse_landmarks(std::string_view json_text, int image_width, int image_height)
{
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("landmarks: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array())
        throw InputError("landmarks: expected an object with a \"points\" array");
    const auto& pts = doc["points"];
    if (pts.size() != landmark_count)
        throw InputError("landmarks: expected 68 points, got " + std::to_string(pts.size()));

    LandmarkSet out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw InputError("landmarks: point " + std::to_string(i) + " is not an [x, y] pair");
        const double x = p[0].get<double>();
        const double y = p[1].get<double>();
        if (!std::isfinite(x) || !std::isfinite(y))
            throw InputError("landmarks: point " + std::to_string(i) + " is not finite");
        if (x < -image_width || x > 2.0 * image_width || y < -image_height || y > 2.0 * image_height)
            throw InputError("landmarks: point " + std::to_string(i) + " lies far outside the image");
        out.points[i] = {x, y};
    }
    if (doc.contains("roll_deg") && !doc["roll_deg"].is_null()) {
        if (!doc["roll_deg"].is_number())
            throw InputError("landmarks: \"roll_deg\" must be a number");
        const double deg = doc["roll_deg"].get<double>();
        if (!std::isfinite(deg))
            throw InputError("landmarks: \"roll_deg\" is not finite");
        out.roll = Angle::from_degrees(deg);
        out.roll_given = true;
    } else {
        out.roll = roll_from_eyes(out.points);
    }
    return out;
}

LandmarkSet load_landmarks(const std::filesystem::path& path, int image_width, int image_height)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open landmark file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_landmarks(buf.str(), image_width, image_height);
}

LandmarkSet rotate_landmarks(const LandmarkSet& landmarks, Angle angle, Point center)
{
    const double c = std::cos(angle.radians);
    const double s = std::sin(angle.radians);
    LandmarkSet out = landmarks;
    for (Point& p : out.points) {
        const double dx = p.x - center.x;
        const double dy = p.y - center.y;
        p = {center.x + c * dx - s * dy, center.y + s * dx + c * dy};
    }
    out.roll = Angle{landmarks.roll.radians + angle.radians}.normalized();
    return out;
}

std::size_t FaceMask::area() const noexcept
{
    return static_cast<std::size_t>(std::ranges::count_if(mask.samples(), [](std::uint8_t v) { return v != 0; }));
}

FaceMask make_mask(const Image& binary)
{
    if (binary.channels() != 1)
        throw InputError("mask must be single-channel");
    FaceMask m{Image(binary.width(), binary.height(), 1), {}};
    BoundingBox& b = m.bbox;
    b = {binary.width(), binary.height(), -1, -1};
    for (int y = 0; y < binary.height(); ++y)
        for (int x = 0; x < binary.width(); ++x)
            if (binary.at(x, y) != 0) {
                m.mask.at(x, y) = 1;
                b.x0 = std::min(b.x0, x);
                b.y0 = std::min(b.y0, y);
                b.x1 = std::max(b.x1, x);
                b.y1 = std::max(b.y1, y);
            }
    if (b.empty())
        b = {};
    return m;
}

FaceMask build_face_mask(const LandmarkSet& landmarks, int image_width, int image_height, double extend)
{
    if (!(extend >= 0.0) || !std::isfinite(extend))
        throw InputError("mask extension must be finite and >= 0");
    if (image_width < 1 || image_height < 1)
        throw InputError("mask image size must be positive");
    const auto& pts = landmarks.points;

    const Point brow = centroid(pts, landmark::brow_first, landmark::brow_last);
    const Point chin = pts[landmark::chin];
    const double face_h = std::hypot(chin.x - brow.x, chin.y - brow.y);
    const Point down{-std::sin(landmarks.roll.radians), std::cos(landmarks.roll.radians)};
    const double lift = extend * face_h;

    std::vector<Point> outline;
    for (int i = landmark::jaw_first; i <= landmark::jaw_last; ++i)
        outline.push_back(pts[static_cast<std::size_t>(i)]);
    for (int i = landmark::brow_first; i <= landmark::brow_last; ++i) {
        const Point& p = pts[static_cast<std::size_t>(i)];
        outline.push_back({p.x - lift * down.x, p.y - lift * down.y});
    }

    const auto hull = convex_hull(outline);
    if (hull.size() < 3 || polygon_area(hull) < 1.0)
        throw InputError("face landmarks are degenerate (collinear outline)");

    double minx = hull[0].x, maxx = hull[0].x, miny = hull[0].y, maxy = hull[0].y;
    for (const Point& p : hull) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    const int x0 = std::max(0, static_cast<int>(std::floor(minx)));
    const int x1 = std::min(image_width - 1, static_cast<int>(std::ceil(maxx)));
    const int y0 = std::max(0, static_cast<int>(std::floor(miny)));
    const int y1 = std::min(image_height - 1, static_cast<int>(std::ceil(maxy)));

    Image bin(image_width, image_height, 1, 0);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) {
            const Point p{static_cast<double>(x), static_cast<double>(y)};
            bool inside = true;
            for (std::size_t i = 0; i < hull.size() && inside; ++i)
                inside = cross(hull[i], hull[(i + 1) % hull.size()], p) >= -1e-9;
            if (inside)
                bin.at(x, y) = 1;
        }
    FaceMask mask = make_mask(bin);
    if (mask.bbox.empty())
        throw InputError("face mask lies entirely outside the image");
    return mask;
}

double distance_to_segment(Point p, const Segment& s) noexcept
{
    const double vx = s.b.x - s.a.x;
    const double vy = s.b.y - s.a.y;
    const double len2 = vx * vx + vy * vy;
    double t = 0.0;
    if (len2 > 0.0)
        t = std::clamp(((p.x - s.a.x) * vx + (p.y - s.a.y) * vy) / len2, 0.0, 1.0);
    return std::hypot(p.x - (s.a.x + t * vx), p.y - (s.a.y + t * vy));
}

Segment build_axis(const LandmarkSet& landmarks, const FaceMask& mask)
{
    const auto& pts = landmarks.points;
    const Point c = centroid(pts, landmark::bridge_first, landmark::bridge_last);
    double sxx = 0, syy = 0, sxy = 0;
    for (int i = landmark::bridge_first; i <= landmark::bridge_last; ++i) {
        const double dx = pts[static_cast<std::size_t>(i)].x - c.x;
        const double dy = pts[static_cast<std::size_t>(i)].y - c.y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx + syy < 1e-12)
        throw InputError("nose bridge points coincide; cannot fit the face axis");

    const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    Point d{std::cos(theta), std::sin(theta)};
    const Point& top = pts[landmark::bridge_first];
    const Point& bottom = pts[landmark::bridge_last];
    if ((bottom.x - top.x) * d.x + (bottom.y - top.y) * d.y < 0.0)
        d = {-d.x, -d.y};

    auto inside = [&](double t) {
        return mask.contains(static_cast<int>(std::floor(c.x + t * d.x + 0.5)),
                             static_cast<int>(std::floor(c.y + t * d.y + 0.5)));
    };
    if (!inside(0.0))
        throw InputError("nose bridge lies outside the face mask");

    constexpr double step = 0.125;
    const double limit = std::hypot(mask.mask.width(), mask.mask.height());
    double t_up = 0.0;
    while (t_up > -limit && inside(t_up - step))
        t_up -= step;
    double t_down = 0.0;
    while (t_down < limit && inside(t_down + step))
        t_down += step;
    return {{c.x + t_up * d.x, c.y + t_up * d.y}, {c.x + t_down * d.x, c.y + t_down * d.y}};
}

Field distance_to_background(const Image& binary)
{
    if (binary.channels() != 1)
        throw InputError("distance transform expects a single-channel raster");
    // one pixel of background padding on every side
    const int w = binary.width() + 2;
    const int h = binary.height() + 2;
    std::vector<double> grid(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0);
    for (int y = 0; y < binary.height(); ++y)
        for (int x = 0; x < binary.width(); ++x)
            if (binary.at(x, y) != 0)
                grid[static_cast<std::size_t>(y + 1) * w + (x + 1)] = far;

    const int n = std::max(w, h);
    std::vector<double> f(static_cast<std::size_t>(n)), d(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n) + 1);
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int x = 0; x < w; ++x) {
        f.resize(static_cast<std::size_t>(h));
        d.resize(static_cast<std::size_t>(h));
        for (int y = 0; y < h; ++y)
            f[static_cast<std::size_t>(y)] = grid[static_cast<std::size_t>(y) * w + x];
        edt_1d(f, d, v, z);
        for (int y = 0; y < h; ++y)
            grid[static_cast<std::size_t>(y) * w + x] = d[static_cast<std::size_t>(y)];
    }
    for (int y = 0; y < h; ++y) {
        f.resize(static_cast<std::size_t>(w));
        d.resize(static_cast<std::size_t>(w));
        for (int x = 0; x < w; ++x)
            f[static_cast<std::size_t>(x)] = grid[static_cast<std::size_t>(y) * w + x];
        edt_1d(f, d, v, z);
        for (int x = 0; x < w; ++x)
            grid[static_cast<std::size_t>(y) * w + x] = d[static_cast<std::size_t>(x)];
    }

    Field out(binary.width(), binary.height(), 1);
    for (int y = 0; y < binary.height(); ++y)
        for (int x = 0; x < binary.width(); ++x)
            out.at(x, y) = std::sqrt(grid[static_cast<std::size_t>(y + 1) * w + (x + 1)]);
    return out;
}

Field pseudo_normal_field(const FaceMask& mask, const Segment& axis)
{
    if (mask.bbox.empty() || mask.area() == 0)
        throw InputError("pseudo_normal_field: empty face mask");
    const Field to_outside = distance_to_background(mask.mask);
    Field theta(mask.mask.width(), mask.mask.height(), 1, half_pi);
    for (int y = mask.bbox.y0; y <= mask.bbox.y1; ++y)
        for (int x = mask.bbox.x0; x <= mask.bbox.x1; ++x) {
            if (!mask.contains(x, y))
                continue;
            const double dist_axis = distance_to_segment({static_cast<double>(x), static_cast<double>(y)}, axis);
            // mask pixels next to the outside sit on the boundary: B = 0
            const double dist_border = std::max(0.0, to_outside.at(x, y) - 1.0);
            if (dist_axis == 0.0)
                theta.at(x, y) = 0.0;
            else
                theta.at(x, y) = half_pi * (dist_axis / (dist_axis + dist_border));
        }
    return theta;
}

ShadingField shading_field(const Field& theta, double alpha)
{
    check_alpha(alpha);
    ShadingField out{Field(theta.width(), theta.height(), 1), alpha};
    std::ranges::transform(theta.samples(), out.shade.samples().begin(), [alpha](double t) {
        if (t >= half_pi)
            return alpha; // cos(pi/2) is not exactly 0 in floating point
        return std::clamp(std::cos(std::max(t, 0.0)) * (1.0 - alpha) + alpha, alpha, 1.0);
    });
    return out;
}

ShadingField blur_shading(const ShadingField& shade, const FaceMask& mask, Angle roll, double strength)
{
    if (!(strength >= 0.0) || !std::isfinite(strength))
        throw InputError("blur strength must be finite and >= 0");
    if (strength == 0.0 || mask.bbox.empty())
        return shade;

    const double along = strength * 0.12 * mask.bbox.height();
    const double across = strength * 0.03 * mask.bbox.width();
    const Angle axis = Angle{roll.radians + half_pi}.normalized();

    const Field first = oriented_gaussian_blur(shade.shade, along, across, axis);
    const Field second = oriented_gaussian_blur(first, 2.0 * along, 2.0 * across, axis);

    // Cross-fade weight of the second pass: 1 at and beyond the top/bottom
    // edge of the mask box, falling to 0 a fifth of the way in.
    const double span = std::max(1, mask.bbox.height() - 1);
    ShadingField out{Field(shade.shade.width(), shade.shade.height(), 1), shade.alpha};
    for (int y = 0; y < out.shade.height(); ++y) {
        const double t = (y - mask.bbox.y0) / span;
        const double wgt = std::clamp(std::max((0.2 - t) / 0.2, (t - 0.8) / 0.2), 0.0, 1.0);
        for (int x = 0; x < out.shade.width(); ++x) {
            const double v = (1.0 - wgt) * first.at(x, y) + wgt * second.at(x, y);
            out.shade.at(x, y) = std::clamp(v, shade.alpha, 1.0);
        }
    }
    return out;
}

ShadingField depth_to_shading(const Image& depth, double alpha, double sigma)
{
    check_alpha(alpha);
    if (depth.channels() != 1)
        throw InputError("depth map must be single-channel");
    if (depth.empty())
        throw InputError("depth map is empty");
    const auto [lo, hi] = std::ranges::minmax(depth.samples());
    if (lo == hi)
        throw InputError("depth map is constant; cannot normalise");
    ShadingField out{Field(depth.width(), depth.height(), 1), alpha};
    const double range = hi - lo;
    std::ranges::transform(depth.samples(), out.shade.samples().begin(),
                           [&](std::uint8_t v) { return alpha + (1.0 - alpha) * (v - lo) / range; });
    if (sigma > 0.0)
        out.shade = gaussian_blur(out.shade, sigma);
    else if (sigma < 0.0)
        throw InputError("depth blur sigma must be >= 0");
    for (double& v : out.shade.samples())
        v = std::clamp(v, alpha, 1.0);
    return out;
}

OffsetField shading_to_offsets(const ShadingField& shade, double amplitude)
{
    check_alpha(shade.alpha);
    if (!std::isfinite(amplitude))
        throw InputError("warp amplitude must be finite");
    Field dy(shade.shade.width(), shade.shade.height(), 1);
    const double scale = amplitude / (1.0 - shade.alpha);
    std::ranges::transform(shade.shade.samples(), dy.samples().begin(),
                           [&](double s) { return scale * (s - shade.alpha); });
    return OffsetField(std::move(dy));
}

} // namespace engrave
