#pragma once

// Named numerical checks. Each returns a VerificationReport whose `passed`
// flag is exactly max_residual <= tolerance. Strict inequalities (J > 0,
// |v| < pi/4) use the negated smallest subnormal as tolerance so that a
// residual of exactly zero fails.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hshear/grid.hpp"
#include "hshear/mapping_catalog.hpp"
#include "hshear/shear_engine.hpp"
#include "hshear/surface_lift.hpp"

namespace hshear {

inline constexpr double kStrictlyNegative = -std::numeric_limits<double>::denorm_min();

struct VerificationReport {
    std::string check_name;
    FamilyParams family;
    GridSpec grid;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    DiskPoint worst_point;
    std::vector<std::pair<std::string, double>> details;

    void finalize() { passed = max_residual <= tolerance; } // NaN fails

    std::optional<double> detail(const std::string& key) const
    {
        for (const auto& [k, v] : details)
            if (k == key)
                return v;
        return std::nullopt;
    }
};

namespace detail {

// Running maximum with the point where it occurred; NaN always wins.
struct WorstTracker {
    double value = -std::numeric_limits<double>::infinity();
    DiskPoint at;

    void update(double v, DiskPoint p)
    {
        if (std::isnan(value))
            return;
        if (std::isnan(v) || v > value) {
            value = v;
            at = p;
        }
    }
};

inline VerificationReport make_report(std::string name, const FamilyParams& f, const GridSpec& g)
{
    VerificationReport r;
    r.check_name = std::move(name);
    r.family = f;
    r.grid = g;
    return r;
}

} // namespace detail

struct HGDerivatives {
    Complex h;
    Complex g;
};

/// h' and g' of the family's closed form by a Cauchy contour inside the disk.
inline HGDerivatives closed_form_derivatives(const Family& family, DiskPoint p)
{
    const double radius = std::min(0.25, 0.5 * (1.0 - p.radius()));
    constexpr int nodes = 64;
    Complex dh{0.0, 0.0};
    Complex dg{0.0, 0.0};
    for (int j = 0; j < nodes; ++j) {
        const Complex e = std::polar(1.0, 2.0 * kPi * j / nodes);
        const MapSample s = family.sample(p.value() + radius * e);
        dh += s.h / e;
        dg += s.g / e;
    }
    const double scale = nodes * radius;
    return {dh / scale, dg / scale};
}

/// Closed-form (h, g) against the quadrature shear oracle.
inline VerificationReport check_oracle_equivalence(const Family& family, const GridSpec& grid,
                                                   std::optional<double> tol = std::nullopt,
                                                   const QuadratureConfig& cfg = {})
{
    auto r = detail::make_report("oracle_equivalence", family.params(), grid);
    detail::WorstTracker worst;
    int fallback = 0;
    int delegated = 0;
    for (const auto& p : grid.nodes()) {
        try {
            const MapSample s = family.sample(p);
            const MapSample o = shear_at(family.prevertex(), family.dilatation(), p, cfg);
            fallback += s.source == SampleSource::shear_oracle;
            delegated += s.source == SampleSource::delegated;
            worst.update(std::max(std::abs(s.h - o.h), std::abs(s.g - o.g)), p);
        } catch (const Error& e) {
            rethrow_at(e, p.value());
        }
    }
    r.max_residual = worst.value;
    r.worst_point = worst.at;
    r.tolerance = tol.value_or(fallback > 0 ? 1e-6 : 1e-8);
    r.details = {{"fallback_samples", fallback}, {"delegated_samples", delegated}};
    r.finalize();
    return r;
}

/// |g' - omega h'| with derivatives of the closed form.
inline VerificationReport check_dilatation(const Family& family, const GridSpec& grid,
                                           std::optional<double> tol = std::nullopt)
{
    auto r = detail::make_report("dilatation", family.params(), grid);
    detail::WorstTracker worst;
    for (const auto& p : grid.nodes()) {
        try {
            const auto d = closed_form_derivatives(family, p);
            worst.update(std::abs(d.g - family.dilatation()(p.value()) * d.h), p);
        } catch (const Error& e) {
            rethrow_at(e, p.value());
        }
    }
    r.max_residual = worst.value;
    r.worst_point = worst.at;
    r.tolerance = tol.value_or(1e-8);
    r.finalize();
    return r;
}

/// |h - g - phi| on the grid.
inline VerificationReport check_prevertex(const Family& family, const GridSpec& grid,
                                          std::optional<double> tol = std::nullopt)
{
    auto r = detail::make_report("prevertex", family.params(), grid);
    detail::WorstTracker worst;
    for (const auto& p : grid.nodes()) {
        try {
            const MapSample s = family.sample(p);
            worst.update(std::abs(s.h - s.g - family.prevertex()(p.value())), p);
        } catch (const Error& e) {
            rethrow_at(e, p.value());
        }
    }
    r.max_residual = worst.value;
    r.worst_point = worst.at;
    r.tolerance = tol.value_or(1e-10);
    r.finalize();
    return r;
}

/// Residual is -min(|h'|^2 - |g'|^2); passes only for a strictly positive minimum.
inline VerificationReport check_jacobian_positive(const Family& family, const GridSpec& grid,
                                                  std::optional<double> tol = std::nullopt)
{
    auto r = detail::make_report("jacobian", family.params(), grid);
    detail::WorstTracker worst;
    for (const auto& p : grid.nodes()) {
        try {
            const auto d = closed_form_derivatives(family, p);
            worst.update(-(std::norm(d.h) - std::norm(d.g)), p);
        } catch (const Error& e) {
            rethrow_at(e, p.value());
        }
    }
    r.max_residual = worst.value;
    r.worst_point = worst.at;
    r.tolerance = tol.value_or(kStrictlyNegative);
    r.details = {{"min_jacobian", -worst.value}};
    r.finalize();
    return r;
}

/// F_0a: sup |v| - pi/4 must be negative; for a = 1 also u > -1/2, for a = -1 also u < 1/2.
inline VerificationReport check_strip_bound(double a, const GridSpec& grid, std::optional<double> tol = std::nullopt)
{
    const FamilyParams fp = FamilyParams::make_F_0a(a);
    fp.validate();
    auto r = detail::make_report("strip_bound", fp, grid);
    detail::WorstTracker worst;
    double sup_v = 0.0;
    double min_u = std::numeric_limits<double>::infinity();
    double max_u = -std::numeric_limits<double>::infinity();
    for (const auto& p : grid.nodes()) {
        const MapSample s = eval_F_0a(a, p);
        sup_v = std::max(sup_v, std::abs(s.v));
        min_u = std::min(min_u, s.u);
        max_u = std::max(max_u, s.u);
        double res = std::abs(s.v) - kPi / 4.0;
        if (a == 1.0)
            res = std::max(res, -0.5 - s.u);
        if (a == -1.0)
            res = std::max(res, s.u - 0.5);
        worst.update(res, p);
    }
    r.max_residual = worst.value;
    r.worst_point = worst.at;
    r.tolerance = tol.value_or(kStrictlyNegative);
    r.details = {{"sup_abs_v", sup_v}, {"min_u", min_u}, {"max_u", max_u}};
    r.finalize();
    return r;
}

/// Conjugate symmetry f(conj z) = conj f(z) for every family; F_a also checks
/// f_{-a}(-z) = -f_a(z). Residuals are relative to max(1, |f|).
inline VerificationReport check_symmetry(const Family& family, const GridSpec& grid,
                                         std::optional<double> tol = std::nullopt)
{
    auto r = detail::make_report("symmetry", family.params(), grid);
    const FamilyParams& fp = family.params();
    std::optional<Family> mirror;
    if (fp.family == FamilyId::F_a)
        mirror.emplace(FamilyParams::make_F_a(-fp.a));
    detail::WorstTracker worst;
    for (const auto& p : grid.nodes()) {
        try {
            const Complex z = p.value();
            const Complex f = family.sample(p).f();
            const double scale = std::max(1.0, std::abs(f));
            double res = std::abs(family.sample(std::conj(z)).f() - std::conj(f)) / scale;
            if (mirror)
                res = std::max(res, std::abs(mirror->sample(-z).f() + f) / scale);
            worst.update(res, p);
        } catch (const Error& e) {
            rethrow_at(e, p.value());
        }
    }
    r.max_residual = worst.value;
    r.worst_point = worst.at;
    r.tolerance = tol.value_or(1e-12);
    r.finalize();
    return r;
}

/// Slit endpoint parameter a for the families whose boundary collapses onto
/// -(2-a)/6: F_ca with c = 2, and f_2n for n = 1 (a = 1) or n = 2 (a = 0).
inline std::optional<double> slit_parameter(const FamilyParams& fp)
{
    if (fp.family == FamilyId::F_ca && fp.c == 2.0)
        return fp.a;
    if (fp.family == FamilyId::f_2n && fp.n == 1)
        return 1.0;
    if (fp.family == FamilyId::f_2n && fp.n == 2)
        return 0.0;
    return std::nullopt;
}

inline const std::vector<double>& default_slit_radii()
{
    static const std::vector<double> radii{0.99, 0.999, 0.9999};
    return radii;
}

/// |f(r e^{it}) + (2-a)/6| for t in {pi/2, pi, 3pi/2} along an increasing r
/// sequence; the residual is the distance at the last radius, or +inf when
/// the distance fails to decrease.
inline VerificationReport check_slit_limit(const Family& family, const std::vector<double>& radii = default_slit_radii(),
                                           std::optional<double> tol = std::nullopt)
{
    const auto a = slit_parameter(family.params());
    if (!a)
        throw UnsupportedParameterError(family.params().label() + ": slit limit applies to F_ca with c=2 and f_2n with n<=2");
    if (radii.empty())
        throw DomainError("slit limit needs at least one radius");
    const Complex target(-(2.0 - *a) / 6.0, 0.0);
    GridSpec g{static_cast<int>(radii.size()), 4, radii.back()};
    auto r = detail::make_report("slit_limit", family.params(), g);
    detail::WorstTracker worst;
    bool monotone = true;
    for (double t : {kPi / 2.0, kPi, 3.0 * kPi / 2.0}) {
        double previous = std::numeric_limits<double>::infinity();
        for (double rad : radii) {
            const DiskPoint p(std::polar(rad, t));
            const double d = std::abs(family.sample(p).f() - target);
            if (d >= previous)
                monotone = false;
            previous = d;
            if (rad == radii.back())
                worst.update(d, p);
        }
    }
    r.max_residual = monotone ? worst.value : std::numeric_limits<double>::infinity();
    r.worst_point = worst.at;
    r.tolerance = tol.value_or(0.02);
    r.details = {{"target", target.real()}, {"final_distance", worst.value}, {"monotone", monotone ? 1.0 : 0.0}};
    r.finalize();
    return r;
}

struct ChdScan {
    int max_crossings = 0;
    double worst_line = 0.0;
    std::size_t worst_vertex = 0;
    int lines = 0;
};

/// Counts crossings of the closed polygon with `line_count` horizontal lines
/// at the midpoints of equal slices of its vertical extent. An edge counts
/// when the line lies in [min(y0,y1), max(y0,y1)).
inline ChdScan chd_scan(const std::vector<Complex>& closed_curve, int line_count)
{
    if (closed_curve.size() < 3 || line_count < 1)
        throw DomainError("CHD scan needs at least 3 vertices and 1 line");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& p : closed_curve) {
        lo = std::min(lo, p.imag());
        hi = std::max(hi, p.imag());
    }
    ChdScan out;
    out.lines = line_count;
    const std::size_t m = closed_curve.size();
    for (int j = 0; j < line_count; ++j) {
        const double y = lo + (j + 0.5) / line_count * (hi - lo);
        int crossings = 0;
        std::size_t first = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double y0 = closed_curve[i].imag();
            const double y1 = closed_curve[(i + 1) % m].imag();
            if (std::min(y0, y1) <= y && y < std::max(y0, y1)) {
                if (crossings == 0)
                    first = i;
                ++crossings;
            }
        }
        if (crossings > out.max_crossings) {
            out.max_crossings = crossings;
            out.worst_line = y;
            out.worst_vertex = first;
        }
    }
    return out;
}

/// A U-shaped crescent: horizontal lines through its arms meet it four times.
inline std::vector<Complex> crescent_fixture(int samples = 256)
{
    std::vector<Complex> curve;
    for (int j = 0; j <= samples; ++j)
        curve.push_back(std::polar(1.0, kPi + kPi * j / samples));
    for (int j = 0; j <= samples; ++j)
        curve.push_back(std::polar(0.5, 2.0 * kPi - kPi * j / samples));
    return curve;
}

inline constexpr int kChdLines = 200;
inline constexpr int kChdCurveSamples = 2048;

/// Boundary image f(r_max e^{it}) sampled at `samples` equally spaced angles.
inline std::vector<Complex> boundary_image(const Family& family, double r_max, int samples = kChdCurveSamples)
{
    std::vector<Complex> curve;
    curve.reserve(samples);
    for (int j = 0; j < samples; ++j) {
        const DiskPoint p(std::polar(r_max, 2.0 * kPi * j / samples));
        try {
            curve.push_back(family.sample(p).f());
        } catch (const Error& e) {
            rethrow_at(e, p.value());
        }
    }
    return curve;
}

/// Sampled necessary condition for convexity in the horizontal direction:
/// residual is the largest crossing count, tolerance 2.
inline VerificationReport check_chd_heuristic(const Family& family, const GridSpec& grid, int line_count = kChdLines,
                                              std::optional<double> tol = std::nullopt)
{
    grid.validate();
    auto r = detail::make_report("chd", family.params(), grid);
    const auto curve = boundary_image(family, grid.r_max);
    const ChdScan scan = chd_scan(curve, line_count);
    r.max_residual = scan.max_crossings;
    r.worst_point = DiskPoint(std::polar(grid.r_max, 2.0 * kPi * scan.worst_vertex / curve.size()));
    r.tolerance = tol.value_or(2.0);
    r.details = {{"lines", line_count}, {"curve_samples", static_cast<double>(curve.size())},
                 {"worst_line_v", scan.worst_line}};
    r.finalize();
    return r;
}

/// The same scan on an arbitrary closed polyline (e.g. the crescent fixture).
inline VerificationReport check_chd_polyline(const std::vector<Complex>& curve, int line_count = kChdLines,
                                             std::optional<double> tol = std::nullopt)
{
    auto r = detail::make_report("chd", FamilyParams{}, GridSpec{});
    const ChdScan scan = chd_scan(curve, line_count);
    r.max_residual = scan.max_crossings;
    r.tolerance = tol.value_or(2.0);
    r.details = {{"lines", line_count}, {"curve_samples", static_cast<double>(curve.size())},
                 {"worst_line_v", scan.worst_line}};
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------
// Surface checks

inline constexpr double kIsothermalStep = 1e-4;
inline constexpr double kLaplacianStep = 1e-2;
inline constexpr double kProjectionTolerance = 1e-10;
inline constexpr double kIsothermalTolerance = 1e-5;
inline constexpr double kHarmonicRatioTolerance = 1.0;

struct SurfaceResiduals {
    double projection = 0.0;
    double isothermal = 0.0;
    std::array<double, 3> laplacian_ratio{}; // max|L_H| / max|L_{H/2}| per coordinate
    double harmonic = 0.0;                   // max |ratio - 4|
    DiskPoint worst_isothermal;
    int points = 0;
};

inline std::array<double, 3> surface_point(const Family& family, Complex z)
{
    const SurfaceSample s = lift(family, DiskPoint(z));
    return {s.u, s.v, s.F3};
}

/// Projection, isothermality and step-halving harmonicity over the interior
/// grid nodes (every ring but the outermost).
inline SurfaceResiduals surface_residuals(const Family& family, const GridSpec& grid)
{
    grid.validate();
    SurfaceResiduals out;
    std::array<double, 3> lap_h{};
    std::array<double, 3> lap_h2{};
    double worst_iso = -1.0;
    std::vector<DiskPoint> interior;
    for (int i = 1; i < grid.rings; ++i)
        for (int j = 0; j < grid.spokes; ++j)
            interior.push_back(grid.node(i, j));
    for (const auto& p : interior) {
        const Complex z = p.value();
        try {
            ++out.points;
            const SurfaceSample s = lift(family, p);
            const MapSample m = family.sample(p);
            out.projection = std::max({out.projection, std::abs(s.u - m.u), std::abs(s.v - m.v)});

            const double hs = kIsothermalStep;
            const auto xp = surface_point(family, z + hs);
            const auto xm = surface_point(family, z - hs);
            const auto yp = surface_point(family, z + Complex(0.0, hs));
            const auto ym = surface_point(family, z - Complex(0.0, hs));
            double E = 0.0, G = 0.0, F = 0.0;
            for (int c = 0; c < 3; ++c) {
                const double dx = (xp[c] - xm[c]) / (2.0 * hs);
                const double dy = (yp[c] - ym[c]) / (2.0 * hs);
                E += dx * dx;
                G += dy * dy;
                F += dx * dy;
            }
            const double iso = std::max(std::abs(E - G), std::abs(F)) / (E + G);
            if (iso > worst_iso || std::isnan(iso)) {
                worst_iso = iso;
                out.worst_isothermal = p;
            }
            out.isothermal = std::max(out.isothermal, iso);

            const std::array<double, 3> x0{s.u, s.v, s.F3};
            for (const double H : {kLaplacianStep, 0.5 * kLaplacianStep}) {
                const auto e = surface_point(family, z + H);
                const auto w = surface_point(family, z - H);
                const auto n = surface_point(family, z + Complex(0.0, H));
                const auto so = surface_point(family, z - Complex(0.0, H));
                auto& acc = H == kLaplacianStep ? lap_h : lap_h2;
                for (int c = 0; c < 3; ++c)
                    acc[c] = std::max(acc[c], std::abs((e[c] + w[c] + n[c] + so[c] - 4.0 * x0[c]) / (H * H)));
            }
        } catch (const Error& e) {
            rethrow_at(e, z);
        }
    }
    for (int c = 0; c < 3; ++c) {
        out.laplacian_ratio[c] = lap_h[c] / lap_h2[c];
        out.harmonic = std::max(out.harmonic, std::abs(out.laplacian_ratio[c] - 4.0));
    }
    return out;
}

/// Aggregate surface check. The residual is the largest sub-residual divided
/// by its own tolerance (projection 1e-10, isothermality 1e-5, |ratio - 4| 1),
/// so it passes at tolerance 1.
inline VerificationReport check_surface(const Family& family, const GridSpec& grid,
                                        std::optional<double> tol = std::nullopt)
{
    if (!liftable(family.params()))
        throw InvalidDilatationError(family.params().label() + ": no minimal-surface lift (dilatation is not a square)");
    auto r = detail::make_report("surface", family.params(), grid);
    const SurfaceResiduals s = surface_residuals(family, grid);
    if (s.points == 0)
        throw DomainError("surface check needs at least two rings (the outermost ring is excluded)");
    r.max_residual = std::max({s.projection / kProjectionTolerance, s.isothermal / kIsothermalTolerance,
                               s.harmonic / kHarmonicRatioTolerance});
    if (std::isnan(s.harmonic) || std::isnan(s.isothermal))
        r.max_residual = std::numeric_limits<double>::quiet_NaN();
    r.worst_point = s.worst_isothermal;
    r.tolerance = tol.value_or(1.0);
    r.details = {{"projection", s.projection},
                 {"isothermal", s.isothermal},
                 {"laplacian_ratio_u", s.laplacian_ratio[0]},
                 {"laplacian_ratio_v", s.laplacian_ratio[1]},
                 {"laplacian_ratio_F3", s.laplacian_ratio[2]},
                 {"points", s.points}};
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------
// Dispatch by name

inline const std::vector<std::string>& all_check_names()
{
    static const std::vector<std::string> names{"oracle_equivalence", "dilatation", "prevertex", "jacobian",
                                                "strip_bound",        "symmetry",   "slit_limit", "chd",
                                                "surface"};
    return names;
}

inline bool check_applicable(const std::string& name, const FamilyParams& fp)
{
    if (name == "strip_bound")
        return fp.family == FamilyId::F_0a;
    if (name == "slit_limit")
        return slit_parameter(fp).has_value();
    if (name == "surface")
        return liftable(fp);
    return std::find(all_check_names().begin(), all_check_names().end(), name) != all_check_names().end();
}

inline std::vector<std::string> applicable_checks(const FamilyParams& fp)
{
    std::vector<std::string> out;
    for (const auto& n : all_check_names())
        if (check_applicable(n, fp))
            out.push_back(n);
    return out;
}

inline VerificationReport run_check(const std::string& name, const Family& family, const GridSpec& grid,
                                    std::optional<double> tol = std::nullopt)
{
    if (!check_applicable(name, family.params()))
        throw UnsupportedParameterError("check '" + name + "' does not apply to " + family.params().label());
    if (name == "oracle_equivalence")
        return check_oracle_equivalence(family, grid, tol);
    if (name == "dilatation")
        return check_dilatation(family, grid, tol);
    if (name == "prevertex")
        return check_prevertex(family, grid, tol);
    if (name == "jacobian")
        return check_jacobian_positive(family, grid, tol);
    if (name == "strip_bound")
        return check_strip_bound(family.params().a, grid, tol);
    if (name == "symmetry")
        return check_symmetry(family, grid, tol);
    if (name == "slit_limit")
        return check_slit_limit(family, default_slit_radii(), tol);
    if (name == "chd")
        return check_chd_heuristic(family, grid, kChdLines, tol);
    return check_surface(family, grid, tol);
}

} // namespace hshear
