#pragma once

// SVG grid images and Wavefront OBJ meshes. All numbers go through
// format_number (9 significant digits, '.' separator, no locale).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hshear/mapping_catalog.hpp"
#include "hshear/surface_lift.hpp"

namespace hshear {

inline std::string format_number(double x)
{
    if (!std::isfinite(x))
        throw DomainError("cannot format non-finite value");
    if (x == 0.0)
        x = 0.0; // folds -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
    std::string s(buf, res.ptr);
    if (s == "-0")
        s = "0";
    return s;
}

struct RenderConfig {
    int rings = 10;
    int spokes = 24;
    double r_max = 0.98;
    double stroke_width = 1.0; // in canvas pixels
    int canvas_px = 800;
    int samples_per_curve = 256;

    GridSpec grid() const { return {rings, spokes, r_max}; }

    void validate() const
    {
        grid().validate();
        if (canvas_px < 64)
            throw DomainError("canvas_px must be at least 64");
        if (samples_per_curve < 16)
            throw DomainError("samples_per_curve must be at least 16");
        if (!(stroke_width > 0.0))
            throw DomainError("stroke_width must be positive");
    }
};

struct Polyline {
    std::string kind; // "spoke" or "ring"
    int index = 0;
    std::vector<Complex> points;
};

/// Images of the grid's radial segments [0, r_max] e^{it_j} followed by its
/// circles r_i e^{it} (closed, last point repeats the first).
inline std::vector<Polyline> map_polylines(const Family& family, const RenderConfig& cfg)
{
    cfg.validate();
    const GridSpec g = cfg.grid();
    const int m = cfg.samples_per_curve;
    auto at = [&](Complex z) {
        const DiskPoint p(z);
        try {
            return family.sample(p).f();
        } catch (const Error& e) {
            rethrow_at(e, z);
        }
    };
    std::vector<Polyline> out;
    for (int j = 0; j < g.spokes; ++j) {
        Polyline pl{"spoke", j, {}};
        for (int k = 0; k < m; ++k)
            pl.points.push_back(at(std::polar(g.r_max * k / (m - 1), g.spoke_angle(j))));
        out.push_back(std::move(pl));
    }
    for (int i = 1; i <= g.rings; ++i) {
        Polyline pl{"ring", i, {}};
        for (int k = 0; k < m; ++k)
            pl.points.push_back(at(std::polar(g.ring_radius(i), 2.0 * kPi * k / m)));
        pl.points.push_back(pl.points.front());
        out.push_back(std::move(pl));
    }
    return out;
}

struct Bounds {
    double u_min = std::numeric_limits<double>::infinity();
    double u_max = -std::numeric_limits<double>::infinity();
    double v_min = std::numeric_limits<double>::infinity();
    double v_max = -std::numeric_limits<double>::infinity();

    void include(Complex p)
    {
        u_min = std::min(u_min, p.real());
        u_max = std::max(u_max, p.real());
        v_min = std::min(v_min, p.imag());
        v_max = std::max(v_max, p.imag());
    }
};

inline Bounds bounds_of(const std::vector<Polyline>& lines)
{
    Bounds b;
    for (const auto& l : lines)
        for (const auto& p : l.points)
            b.include(p);
    return b;
}

/// Points are written as raw (u, v); a scale(1,-1) group flips the y axis so
/// the viewBox is the only other transform.
inline void write_svg(std::ostream& os, const std::vector<Polyline>& lines, const RenderConfig& cfg)
{
    cfg.validate();
    if (lines.empty())
        throw DomainError("nothing to draw");
    const Bounds b = bounds_of(lines);
    double w = b.u_max - b.u_min;
    double h = b.v_max - b.v_min;
    if (w <= 0.0)
        w = 1.0;
    if (h <= 0.0)
        h = 1.0;
    const double mx = 0.05 * w;
    const double my = 0.05 * h;
    const double vw = w + 2.0 * mx;
    const double vh = h + 2.0 * my;
    const double px_h = std::max(1.0, std::round(cfg.canvas_px * vh / vw));

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << cfg.canvas_px
       << "\" height=\"" << format_number(px_h) << "\" viewBox=\"" << format_number(b.u_min - mx) << ' '
       << format_number(-(b.v_max + my)) << ' ' << format_number(vw) << ' ' << format_number(vh)
       << "\">\n";
    os << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" << format_number(cfg.stroke_width * vw / cfg.canvas_px)
       << "\" stroke-linejoin=\"round\">\n";
    for (const auto& l : lines) {
        os << "<polyline class=\"" << l.kind << "\" stroke=\"" << (l.kind == "ring" ? "#c0392b" : "#1f4e9c")
           << "\" points=\"";
        for (std::size_t k = 0; k < l.points.size(); ++k) {
            if (k)
                os << ' ';
            os << format_number(l.points[k].real()) << ',' << format_number(l.points[k].imag());
        }
        os << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
}

inline std::string render_map_svg(const Family& family, const RenderConfig& cfg)
{
    std::ostringstream os;
    write_svg(os, map_polylines(family, cfg), cfg);
    return os.str();
}

/// "v u v F3" per vertex, then one-based "f i j k" per triangle.
inline void write_obj(std::ostream& os, const SurfaceMesh& mesh)
{
    for (const auto& v : mesh.vertices)
        os << "v " << format_number(v.u) << ' ' << format_number(v.v) << ' ' << format_number(v.F3) << '\n';
    for (const auto& f : mesh.faces)
        os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

inline std::string render_obj(const SurfaceMesh& mesh)
{
    std::ostringstream os;
    write_obj(os, mesh);
    return os.str();
}

/// Parses the points of every <polyline> in an SVG produced by write_svg.
inline std::vector<std::vector<Complex>> parse_svg_polylines(const std::string& svg)
{
    std::vector<std::vector<Complex>> out;
    const std::string key = "points=\"";
    std::size_t pos = 0;
    while ((pos = svg.find(key, pos)) != std::string::npos) {
        pos += key.size();
        const std::size_t end = svg.find('"', pos);
        std::istringstream is(svg.substr(pos, end - pos));
        std::vector<Complex> pts;
        std::string pair;
        while (is >> pair) {
            const auto comma = pair.find(',');
            pts.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
        }
        out.push_back(std::move(pts));
        pos = end;
    }
    return out;
}

} // namespace hshear
