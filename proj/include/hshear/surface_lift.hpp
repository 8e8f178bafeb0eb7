#pragma once

// Minimal-surface lifts X = (u, v, F3) with F3 = 2 Im int_0^z h'(t) q(t) dt,
// q = z^(n/2) the principal square root of omega = z^n (even n only).
// Negating F3 gives the mirrored surface of the other square root.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "hshear/grid.hpp"
#include "hshear/mapping_catalog.hpp"
#include "hshear/shear_engine.hpp"

namespace hshear {

struct SurfaceSample {
    DiskPoint z;
    double u = 0.0;
    double v = 0.0;
    double F3 = 0.0;
    SampleSource source = SampleSource::closed_form;
};

struct SurfaceMesh {
    std::vector<SurfaceSample> vertices;
    std::vector<std::array<int, 3>> faces; // zero-based vertex indices
};

namespace detail {

inline void require_even(int n, const char* family)
{
    if (n < 1 || n % 2) {
        throw InvalidDilatationError(std::string(family) + ": z^" + std::to_string(n) +
                                     " is not the square of a single-valued analytic function on the disk");
    }
}

inline double alternating(int k) { return k % 2 ? -1.0 : 1.0; }

inline double half_sign(int n) { return alternating(n / 2); }

inline SurfaceSample with_height(const MapSample& m, double F3)
{
    return {m.z, m.u, m.v, F3, m.source};
}

} // namespace detail

inline SurfaceSample lift_f0n(int n, DiskPoint p)
{
    detail::require_even(n, "f_0n");
    const Complex z = p.value();
    Complex sum{0.0, 0.0};
    for (int k = 1; k <= detail::pole_pairs(n); ++k) {
        const double t = detail::pole_angle(k, n);
        sum += detail::alternating(k) * detail::log_ratio(z, t) / std::sin(t);
    }
    const Complex F = (z / (1.0 - z) + detail::half_sign(n) * z / (1.0 + z) - Complex(0.0, 1.0) * sum) /
                      static_cast<double>(n);
    return detail::with_height(eval_f0n(n, p), F.imag());
}

inline SurfaceSample lift_f1n(int n, DiskPoint p)
{
    detail::require_even(n, "f_1n");
    const Complex z = p.value();
    Complex sum{0.0, 0.0};
    for (int k = 1; k <= detail::pole_pairs(n); ++k) {
        const double s = std::sin(kPi * k / n);
        sum += detail::alternating(k) * detail::log_quadratic(z, detail::pole_angle(k, n)) / (s * s);
    }
    const double nn = n;
    const Complex F = (-z / (1.0 - z) + z * (2.0 - z) / ((1.0 - z) * (1.0 - z)) +
                       (nn * nn + 2.0) / 12.0 * principal_log(1.0 - z) +
                       0.5 * detail::half_sign(n) * principal_log(1.0 + z) + 0.5 * sum) /
                      nn;
    return detail::with_height(eval_f1n(n, p), F.imag());
}

inline SurfaceSample lift_f2n(int n, DiskPoint p)
{
    detail::require_even(n, "f_2n");
    const Complex z = p.value();
    Complex sum{0.0, 0.0};
    for (int k = 1; k <= detail::pole_pairs(n); ++k) {
        const double a = kPi * k / n;
        const double s = std::sin(a);
        sum += detail::alternating(k) * std::cos(a) / (s * s * s) * detail::log_ratio(z, detail::pole_angle(k, n));
    }
    const double nn = n;
    const Complex omz = 1.0 - z;
    const Complex F = (4.0 - nn * nn) / (6.0 * nn) * z / omz - 2.0 / nn * z * (2.0 - z) / (omz * omz) +
                      4.0 / (3.0 * nn) * z * (z * z - 3.0 * z + 3.0) / (omz * omz * omz) +
                      Complex(0.0, 1.0) / (2.0 * nn) * sum;
    return detail::with_height(eval_f2n(n, p), F.imag());
}

/// Numeric third coordinate from the shear integrand of the family.
inline double lift_numeric(const Family& family, const AnalyticFn& q, DiskPoint p, const QuadratureConfig& cfg = {})
{
    return lift_third_coordinate([&](Complex s) { return family.hprime(s); }, q, p, cfg);
}

inline SurfaceSample lift_fcn(const Family& family, DiskPoint p)
{
    const FamilyParams& fp = family.params();
    if (fp.family != FamilyId::f_cn)
        throw UnsupportedParameterError("lift_fcn needs an f_cn family");
    detail::require_even(fp.n, "f_cn");
    const FcnEvaluator& ev = *family.fcn();
    SurfaceSample s;
    switch (ev.mode()) {
    case FcnEvaluator::Mode::delegate_f0n: s = lift_f0n(fp.n, p); break;
    case FcnEvaluator::Mode::delegate_f1n: s = lift_f1n(fp.n, p); break;
    case FcnEvaluator::Mode::delegate_f2n: s = lift_f2n(fp.n, p); break;
    default: {
        const MapSample m = ev(p);
        if (const auto F = ev.lift_closed_form(p.value()))
            return detail::with_height(m, *F);
        const int half = fp.n / 2;
        const double F3 = lift_numeric(family, [half](Complex t) { return std::pow(t, half); }, p);
        return {m.z, m.u, m.v, F3, SampleSource::shear_oracle};
    }
    }
    s.source = SampleSource::delegated;
    return s;
}

inline SurfaceSample lift_fcn(double c, int n, DiskPoint p)
{
    detail::require_even(n, "f_cn");
    return lift_fcn(Family(FamilyParams::make_f_cn(c, n)), p);
}

/// Lift of any catalog family whose dilatation has a known analytic square
/// root: closed forms for the z^n families, quadrature otherwise.
inline SurfaceSample lift(const Family& family, DiskPoint p)
{
    const FamilyParams& fp = family.params();
    switch (fp.family) {
    case FamilyId::f_0n: return lift_f0n(fp.n, p);
    case FamilyId::f_1n: return lift_f1n(fp.n, p);
    case FamilyId::f_2n: return lift_f2n(fp.n, p);
    case FamilyId::f_cn: return lift_fcn(family, p);
    default: break;
    }
    const auto q = family.dilatation().square_root();
    if (!q)
        throw InvalidDilatationError(fp.label() + ": dilatation has no single-valued analytic square root");
    const MapSample m = family.sample(p);
    auto s = detail::with_height(m, lift_numeric(family, *q, p));
    s.source = SampleSource::shear_oracle;
    return s;
}

/// True when `lift` accepts the family.
inline bool liftable(const FamilyParams& fp)
{
    if (fp.uses_n())
        return fp.n % 2 == 0;
    return fp.a == 0.0;
}

/// Vertex 0 is the center; ring i (1-based), spoke j sits at 1 + (i-1)*spokes + j.
/// The center fans to ring 1 and every ring quad is split along the diagonal
/// from (i, j) to (i+1, j+1); all triangles are counter-clockwise in the disk.
inline SurfaceMesh build_mesh(const Family& family, const GridSpec& grid)
{
    grid.validate();
    SurfaceMesh mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(grid.rings) * grid.spokes + 1);
    auto add = [&](DiskPoint p) {
        try {
            mesh.vertices.push_back(lift(family, p));
        } catch (const Error& e) {
            rethrow_at(e, p.value());
        }
    };
    add(DiskPoint(0.0, 0.0));
    for (const auto& p : grid.nodes())
        add(p);

    const int S = grid.spokes;
    auto index = [S](int ring, int spoke) { return 1 + (ring - 1) * S + (spoke % S); };
    for (int j = 0; j < S; ++j)
        mesh.faces.push_back({0, index(1, j), index(1, j + 1)});
    for (int i = 1; i < grid.rings; ++i) {
        for (int j = 0; j < S; ++j) {
            const int a = index(i, j);
            const int b = index(i, j + 1);
            const int c = index(i + 1, j + 1);
            const int d = index(i + 1, j);
            mesh.faces.push_back({a, d, c});
            mesh.faces.push_back({a, c, b});
        }
    }
    return mesh;
}

inline SurfaceMesh build_mesh(const FamilyParams& params, const GridSpec& grid)
{
    return build_mesh(Family(params), grid);
}

} // namespace hshear
