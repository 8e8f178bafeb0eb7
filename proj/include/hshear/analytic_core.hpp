#pragma once

// Complex primitives and adaptive Gauss-Kronrod quadrature along straight
// segments. Every multivalued function here uses the principal branch; all
// log/pow arguments produced by the mapping families (1-z, 1+z, (1+z)/(1-z),
// 1 - z e^{i t}, ...) have positive real part on the open disk, so no branch
// tracking is needed anywhere in the library.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "hshear/errors.hpp"

namespace hshear {

using Complex = std::complex<double>;
using AnalyticFn = std::function<Complex(Complex)>;

inline constexpr double kPi = std::numbers::pi;

/// Shortest round-trip decimal form of x.
inline std::string shortest_string(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string format_complex(Complex z)
{
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

/// A point of the open unit disk.
class DiskPoint {
public:
    DiskPoint() = default;
    explicit DiskPoint(Complex z) : z_(z)
    {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) >= 1.0)
            throw DomainError("point " + format_complex(z) + " is not in the open unit disk");
    }
    DiskPoint(double re, double im) : DiskPoint(Complex(re, im)) {}

    Complex value() const noexcept { return z_; }
    double radius() const noexcept { return std::abs(z_); }

private:
    Complex z_{0.0, 0.0};
};

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_subdivisions = 2000;

    void validate() const
    {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1)
            throw DomainError("quadrature config requires abs_tol > 0, rel_tol > 0, max_subdivisions >= 1");
    }
};

// ---------------------------------------------------------------------------
// Branch-safe primitives

inline Complex principal_log(Complex z)
{
    if (z == Complex(0.0, 0.0))
        throw DomainError("log of zero");
    // std::log maps a negative real with a -0.0 imaginary part to -i*pi;
    // the principal branch keeps the argument in (-pi, pi].
    if (z.imag() == 0.0 && z.real() < 0.0)
        return {std::log(-z.real()), kPi};
    return std::log(z);
}

inline Complex principal_pow(Complex z, double c)
{
    if (z == Complex(0.0, 0.0)) {
        if (c > 0.0)
            return {0.0, 0.0};
        throw DomainError("zero raised to a non-positive power");
    }
    return std::exp(c * principal_log(z));
}

/// (1+z)/(1-z): the disk onto the right half-plane.
inline Complex cayley(DiskPoint p)
{
    const Complex z = p.value();
    return (1.0 + z) / (1.0 - z);
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    Complex value;
    double error = 0.0;
    bool roundoff_limited = false;
};

inline void check_finite(Complex v, double t)
{
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream os;
        os << "integrand produced a non-finite value at parameter t=" << t;
        throw DomainError(os.str());
    }
}

template <class Func>
Panel gk15(const Func& f, double a, double b)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<Complex, 15> fv;
    fv[7] = f(center);
    check_finite(fv[7], center);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        fv[j] = f(center - dx);
        fv[14 - j] = f(center + dx);
        check_finite(fv[j], center - dx);
        check_finite(fv[14 - j], center + dx);
    }

    Complex kronrod = kKronrodWeights[7] * fv[7];
    Complex gauss = kGaussWeights[3] * fv[7];
    double resabs = kKronrodWeights[7] * std::abs(fv[7]);
    for (int j = 0; j < 7; ++j) {
        const Complex pair = fv[j] + fv[14 - j];
        kronrod += kKronrodWeights[j] * pair;
        resabs += kKronrodWeights[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
        if (j % 2 == 1)
            gauss += kGaussWeights[j / 2] * pair;
    }
    const Complex mean = 0.5 * kronrod;
    double resasc = kKronrodWeights[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kKronrodWeights[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

    const double scale = std::abs(half);
    Panel p{a, b, kronrod * half, std::abs((kronrod - gauss) * half), false};
    resabs *= scale;
    resasc *= scale;
    if (resasc != 0.0 && p.error != 0.0)
        p.error = resasc * std::min(1.0, std::pow(200.0 * p.error / resasc, 1.5));
    const double floor = 50.0 * eps * resabs;
    if (floor >= p.error) {
        p.error = floor;
        p.roundoff_limited = true;
    }
    return p;
}

} // namespace detail

/// Globally adaptive GK15 on a real parameter interval; the integrand may be
/// complex-valued. Panels are bisected in order of decreasing error estimate
/// until the summed estimate meets max(abs_tol, rel_tol*|I|). Panels whose
/// estimate is already at the floating-point floor are not refined further.
template <class Func>
Complex integrate_interval(const Func& f, double a, double b, const QuadratureConfig& cfg = {})
{
    cfg.validate();
    if (a == b)
        return {0.0, 0.0};

    auto by_error = [](const detail::Panel& x, const detail::Panel& y) { return x.error < y.error; };
    std::vector<detail::Panel> done;
    std::priority_queue<detail::Panel, std::vector<detail::Panel>, decltype(by_error)> open(by_error);
    open.push(detail::gk15(f, a, b));

    int panels = 1;
    Complex total = open.top().value;
    double error = open.top().error;
    double refinable_error = open.top().roundoff_limited ? 0.0 : error;
    for (;;) {
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (error <= tol || refinable_error <= 0.0 || open.empty())
            break;

        detail::Panel worst = open.top();
        open.pop();
        if (worst.roundoff_limited) {
            done.push_back(worst);
            continue;
        }
        if (panels + 1 > cfg.max_subdivisions) {
            std::ostringstream os;
            os << "adaptive quadrature did not reach tolerance " << tol << " within "
               << cfg.max_subdivisions << " subdivisions (estimate " << error << ")";
            throw ConvergenceError(os.str());
        }
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            refinable_error -= worst.error;
            done.push_back(worst);
            continue;
        }
        const detail::Panel left = detail::gk15(f, worst.a, mid);
        const detail::Panel right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        refinable_error -= worst.error;
        for (const auto& child : {left, right}) {
            if (!child.roundoff_limited)
                refinable_error += child.error;
            open.push(child);
        }
        ++panels;
    }

    while (!open.empty()) {
        done.push_back(open.top());
        open.pop();
    }
    std::sort(done.begin(), done.end(),
              [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
    Complex sum{0.0, 0.0};
    for (const auto& p : done)
        sum += p.value;
    return sum;
}

/// Line integral of an analytic integrand along the straight segment [z0, z1].
template <class Func>
Complex integrate_segment(const Func& integrand, Complex z0, Complex z1, const QuadratureConfig& cfg = {})
{
    const Complex dz = z1 - z0;
    if (dz == Complex(0.0, 0.0))
        return {0.0, 0.0};
    auto along = [&](double t) { return integrand(z0 + t * dz); };
    return integrate_interval(along, 0.0, 1.0, cfg) * dz;
}

// ---------------------------------------------------------------------------
// Derivatives of analytic functions

/// Symmetric difference quotient (f(z+h) - f(z-h)) / 2h.
template <class Func>
Complex central_difference(const Func& f, Complex z, double step = 1e-6)
{
    return (f(z + step) - f(z - step)) / (2.0 * step);
}

/// Cauchy-integral derivative: trapezoid rule on a circle of the given
/// radius around z. Converges geometrically in the number of nodes as long as
/// f is analytic on a disk of radius larger than `radius`.
template <class Func>
Complex cauchy_derivative(const Func& f, Complex z, double radius, int nodes = 64)
{
    Complex acc{0.0, 0.0};
    for (int j = 0; j < nodes; ++j) {
        const Complex e = std::polar(1.0, 2.0 * kPi * j / nodes);
        acc += f(z + radius * e) / e;
    }
    return acc / (static_cast<double>(nodes) * radius);
}

/// Derivative of a function analytic on the open unit disk, using a contour
/// that stays inside the disk (radius half the distance to the boundary).
template <class Func>
Complex disk_derivative(const Func& f, DiskPoint p)
{
    const double radius = std::min(0.25, 0.5 * (1.0 - p.radius()));
    return cauchy_derivative(f, p.value(), radius);
}

} // namespace hshear
