#pragma once

// Generic horizontal shear: given a conformal prevertex map phi and a
// dilatation omega, h' = phi' / (1 - omega), g = h - phi, f = h + conj(g).
// The integral is always taken along the radial segment [0, z]; this module
// is the ground-truth oracle for every closed form in the mapping catalog.

#include <cmath>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "hshear/analytic_core.hpp"
#include "hshear/grid.hpp"
#include "hshear/koebe.hpp"

namespace hshear {

/// Points farther out than this are refused by the quadrature oracle.
inline constexpr double kShearMaxRadius = 0.999;

struct DilatationSpec {
    enum class Kind { power_n, mobius_a, square_of_q, custom };

    Kind kind = Kind::power_n;
    int n = 1;
    double a = 0.0;
    AnalyticFn q;
    AnalyticFn custom;

    /// omega(z) = z^n
    static DilatationSpec power(int n)
    {
        if (n < 1)
            throw DomainError("power dilatation needs n >= 1");
        DilatationSpec d;
        d.kind = Kind::power_n;
        d.n = n;
        return d;
    }

    /// omega(z) = z (z + a) / (1 + a z)
    static DilatationSpec mobius(double a)
    {
        if (!(a >= -1.0 && a <= 1.0))
            throw DomainError("mobius dilatation needs a in [-1, 1]");
        DilatationSpec d;
        d.kind = Kind::mobius_a;
        d.a = a;
        return d;
    }

    static DilatationSpec square_of(AnalyticFn q)
    {
        DilatationSpec d;
        d.kind = Kind::square_of_q;
        d.q = std::move(q);
        return d;
    }

    static DilatationSpec from_function(AnalyticFn omega)
    {
        DilatationSpec d;
        d.kind = Kind::custom;
        d.custom = std::move(omega);
        return d;
    }

    Complex operator()(Complex z) const
    {
        switch (kind) {
        case Kind::power_n: return std::pow(z, n);
        case Kind::mobius_a: return z * (z + a) / (1.0 + a * z);
        case Kind::square_of_q: {
            const Complex s = q(z);
            return s * s;
        }
        case Kind::custom: return custom(z);
        }
        return {0.0, 0.0};
    }

    /// An analytic q with q^2 = omega when one is known in closed form.
    std::optional<AnalyticFn> square_root() const
    {
        switch (kind) {
        case Kind::power_n:
            if (n % 2 == 0) {
                const int half = n / 2;
                return AnalyticFn([half](Complex z) { return std::pow(z, half); });
            }
            return std::nullopt;
        case Kind::mobius_a:
            if (a == 0.0)
                return AnalyticFn([](Complex z) { return z; });
            return std::nullopt;
        case Kind::square_of_q: return q;
        case Kind::custom: return std::nullopt;
        }
        return std::nullopt;
    }
};

/// Samples omega on a polar lattice; throws if |omega| >= 1 anywhere, or if
/// `require_origin_zero` and omega(0) != 0.
inline void validate_dilatation(const DilatationSpec& omega, bool require_origin_zero = true)
{
    if (require_origin_zero && std::abs(omega(Complex(0.0, 0.0))) > 1e-14)
        throw InvalidDilatationError("omega(0) must vanish for normalized shears");
    const GridSpec probe{12, 24, 0.99};
    for (const auto& p : probe.nodes()) {
        if (std::abs(omega(p.value())) >= 1.0)
            throw InvalidDilatationError("|omega| >= 1 at z=" + format_complex(p.value()));
    }
}

struct PrevertexSpec {
    enum class Kind { koebe_c, custom };

    Kind kind = Kind::koebe_c;
    double c = 0.0;
    AnalyticFn value;      // custom phi, may be empty (then integrated from the derivative)
    AnalyticFn derivative; // custom phi'

    static PrevertexSpec koebe(double c)
    {
        if (!(c >= 0.0 && c <= 2.0))
            throw DomainError("generalized Koebe prevertex needs c in [0, 2]");
        PrevertexSpec s;
        s.kind = Kind::koebe_c;
        s.c = c;
        return s;
    }

    static PrevertexSpec from_functions(AnalyticFn value, AnalyticFn derivative)
    {
        PrevertexSpec s;
        s.kind = Kind::custom;
        s.value = std::move(value);
        s.derivative = std::move(derivative);
        return s;
    }

    static PrevertexSpec identity()
    {
        return from_functions([](Complex z) { return z; }, [](Complex) { return Complex(1.0, 0.0); });
    }

    Complex d(Complex z) const
    {
        return kind == Kind::koebe_c ? k_c_derivative(c, z) : derivative(z);
    }

    Complex operator()(Complex z, const QuadratureConfig& cfg = {}) const
    {
        if (kind == Kind::koebe_c)
            return k_c_eval(c, z);
        if (value)
            return value(z);
        return integrate_segment([this](Complex s) { return derivative(s); }, Complex(0.0, 0.0), z, cfg);
    }
};

/// Samples phi' on a polar lattice; throws if it vanishes.
inline void validate_prevertex(const PrevertexSpec& phi)
{
    const GridSpec probe{12, 24, 0.99};
    if (std::abs(phi.d(Complex(0.0, 0.0))) < 1e-14)
        throw DomainError("prevertex derivative vanishes at the origin");
    for (const auto& p : probe.nodes())
        if (std::abs(phi.d(p.value())) < 1e-14)
            throw DomainError("prevertex derivative vanishes at z=" + format_complex(p.value()));
}

enum class SampleSource {
    closed_form,  // the family's own closed form
    delegated,    // a dedicated limit formula (c = 0, 1, 2 special cases)
    shear_oracle, // numeric fallback through the quadrature oracle
};

inline const char* to_string(SampleSource s)
{
    switch (s) {
    case SampleSource::closed_form: return "closed_form";
    case SampleSource::delegated: return "delegated";
    case SampleSource::shear_oracle: return "shear_oracle";
    }
    return "unknown";
}

/// One evaluation of f = h + conj(g) at z: u = Re(h + g), v = Im(h - g).
struct MapSample {
    DiskPoint z;
    Complex h;
    Complex g;
    double u = 0.0;
    double v = 0.0;
    SampleSource source = SampleSource::closed_form;

    Complex f() const { return {u, v}; }

    static MapSample from_hg(DiskPoint z, Complex h, Complex g, SampleSource source = SampleSource::closed_form)
    {
        return MapSample{z, h, g, (h + g).real(), (h - g).imag(), source};
    }
};

/// h'(z) of the shear, evaluated directly from the integrand.
inline Complex shear_hprime(const PrevertexSpec& phi, const DilatationSpec& omega, Complex z)
{
    const Complex w = omega(z);
    if (std::abs(w) >= 1.0)
        throw InvalidDilatationError("|omega| >= 1 at z=" + format_complex(z));
    return phi.d(z) / (1.0 - w);
}

inline MapSample shear_at(const PrevertexSpec& phi, const DilatationSpec& omega, DiskPoint p,
                          const QuadratureConfig& cfg = {})
{
    if (p.radius() > kShearMaxRadius)
        throw DomainError("shear oracle refuses |z| > 0.999 (z=" + format_complex(p.value()) + ")");
    const Complex z = p.value();
    const Complex h = integrate_segment(
        [&](Complex s) { return shear_hprime(phi, omega, s); }, Complex(0.0, 0.0), z, cfg);
    const Complex g = h - phi(z, cfg);
    return MapSample::from_hg(p, h, g, SampleSource::shear_oracle);
}

/// 2 Im of the line integral of h' q from 0 to z.
template <class HPrime, class Q>
double lift_third_coordinate(const HPrime& hprime, const Q& q, DiskPoint p, const QuadratureConfig& cfg = {})
{
    const Complex integral = integrate_segment(
        [&](Complex s) { return hprime(s) * q(s); }, Complex(0.0, 0.0), p.value(), cfg);
    return 2.0 * integral.imag();
}

inline std::vector<MapSample> sample_grid(const PrevertexSpec& phi, const DilatationSpec& omega,
                                          const GridSpec& grid, const QuadratureConfig& cfg = {})
{
    std::vector<MapSample> out;
    for (const auto& p : grid.nodes()) {
        try {
            out.push_back(shear_at(phi, omega, p, cfg));
        } catch (const Error& e) {
            rethrow_at(e, p.value());
        }
    }
    return out;
}

} // namespace hshear
