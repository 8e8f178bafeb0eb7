#pragma once

// Pochhammer symbols, the Gauss 2F1 series, and the Appell F1 function of two
// variables through its double series and its Euler-type integral.

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "hshear/analytic_core.hpp"
#include "hshear/errors.hpp"

namespace hshear {

struct F1Params {
    double alpha = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double gamma = 1.0;
};

struct SeriesConfig {
    double term_tol = 1e-15;
    int max_order = 4000;

    void validate() const
    {
        if (!(term_tol > 0.0) || max_order < 1)
            throw DomainError("series config requires term_tol > 0 and max_order >= 1");
    }
};

/// Rising factorial (q)_k = q (q+1) ... (q+k-1), (q)_0 = 1.
template <class T>
T pochhammer(T q, int k)
{
    T acc = T(1);
    for (int j = 0; j < k; ++j)
        acc *= q + T(j);
    return acc;
}

/// True for 0, -1, -2, ... (the values where a Pochhammer factor vanishes).
inline bool is_nonpositive_integer(double q)
{
    return q <= 0.0 && q == std::floor(q);
}

namespace detail {

inline void require_valid_gamma(double gamma)
{
    if (is_nonpositive_integer(gamma)) {
        std::ostringstream os;
        os << "gamma=" << gamma << " is a non-positive integer";
        throw DomainError(os.str());
    }
}

// Stops after three consecutive orders whose term magnitude is below
// term_tol relative to max(1, |sum|).
class TailMonitor {
public:
    explicit TailMonitor(double tol) : tol_(tol) {}

    bool settled(double order_magnitude, Complex sum)
    {
        if (order_magnitude < tol_ * std::max(1.0, std::abs(sum)))
            ++quiet_;
        else
            quiet_ = 0;
        return quiet_ >= 3;
    }

private:
    double tol_;
    int quiet_ = 0;
};

} // namespace detail

inline Complex gauss_2f1(double a, double b, double c, Complex x, const SeriesConfig& cfg = {})
{
    cfg.validate();
    detail::require_valid_gamma(c);
    const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    if (!terminating && std::abs(x) >= 1.0)
        throw DomainError("2F1 power series needs |x| < 1, got x=" + format_complex(x));

    Complex term{1.0, 0.0};
    Complex sum = term;
    detail::TailMonitor tail(cfg.term_tol);
    for (int k = 0; k < cfg.max_order; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        sum += term;
        if (tail.settled(std::abs(term), sum))
            return sum;
    }
    throw ConvergenceError("2F1 series did not settle within max_order terms");
}

/// True when the double series is usable at (x, y): either it terminates or
/// each non-terminating direction has modulus below `radius`.
inline bool appell_series_applicable(const F1Params& p, Complex x, Complex y, double radius = 1.0)
{
    if (is_nonpositive_integer(p.alpha))
        return true;
    const bool x_ok = is_nonpositive_integer(p.beta1) || std::abs(x) < radius;
    const bool y_ok = is_nonpositive_integer(p.beta2) || std::abs(y) < radius;
    return x_ok && y_ok;
}

/// Double series summed along anti-diagonals k + l = m.
inline Complex appell_f1_series(const F1Params& p, Complex x, Complex y, const SeriesConfig& cfg = {})
{
    cfg.validate();
    detail::require_valid_gamma(p.gamma);
    if (!appell_series_applicable(p, x, y))
        throw DomainError("F1 double series needs |x| < 1 and |y| < 1 (x=" + format_complex(x) +
                          ", y=" + format_complex(y) + ")");

    // xs[k] = (b1)_k x^k / k!, ys[l] = (b2)_l y^l / l!
    std::vector<Complex> xs{Complex(1.0, 0.0)};
    std::vector<Complex> ys{Complex(1.0, 0.0)};
    std::vector<double> xs_abs{1.0};
    std::vector<double> ys_abs{1.0};
    xs.reserve(256);
    ys.reserve(256);

    double ratio = 1.0; // (alpha)_m / (gamma)_m
    Complex sum{0.0, 0.0};
    detail::TailMonitor tail(cfg.term_tol);
    for (int m = 0; m <= cfg.max_order; ++m) {
        if (m > 0) {
            ratio *= (p.alpha + m - 1) / (p.gamma + m - 1);
            xs.push_back(xs.back() * ((p.beta1 + m - 1) / m) * x);
            ys.push_back(ys.back() * ((p.beta2 + m - 1) / m) * y);
            xs_abs.push_back(std::abs(xs.back()));
            ys_abs.push_back(std::abs(ys.back()));
        }
        Complex diagonal{0.0, 0.0};
        double bound = 0.0;
        if (ratio != 0.0) {
            for (int k = 0; k <= m; ++k) {
                diagonal += xs[k] * ys[m - k];
                bound += xs_abs[k] * ys_abs[m - k];
            }
        }
        diagonal *= ratio;
        bound *= std::abs(ratio);
        sum += diagonal;
        if (tail.settled(bound, sum))
            return sum;
    }
    throw ConvergenceError("F1 double series did not settle within max_order anti-diagonals");
}

inline bool appell_integral_applicable(const F1Params& p, Complex x, Complex y)
{
    auto hits_zero = [](Complex v) { return v.imag() == 0.0 && v.real() >= 1.0; };
    return p.gamma > p.alpha && p.alpha > 0.0 && !hits_zero(x) && !hits_zero(y);
}

/// Euler-type integral representation, valid for gamma > alpha > 0. The
/// interval is split at 1/2; an endpoint factor t^(alpha-1) or
/// (1-t)^(gamma-alpha-1) with exponent below zero is absorbed by the power
/// substitution t = s^(1/alpha) (resp. 1-t = s^(1/(gamma-alpha))).
inline Complex appell_f1_integral(const F1Params& p, Complex x, Complex y, const QuadratureConfig& cfg = {})
{
    if (!(p.gamma > p.alpha && p.alpha > 0.0))
        throw DomainError("F1 Euler integral needs gamma > alpha > 0");
    if (!appell_integral_applicable(p, x, y))
        throw DomainError("F1 Euler integral: 1 - x t or 1 - y t vanishes on [0, 1]");

    const double a = p.alpha;
    const double ca = p.gamma - p.alpha;
    auto kernel = [&](double t) {
        return principal_pow(1.0 - x * t, -p.beta1) * principal_pow(1.0 - y * t, -p.beta2);
    };

    Complex left;
    if (a < 1.0) {
        auto f = [&](double s) {
            const double t = std::pow(s, 1.0 / a);
            return std::pow(1.0 - t, ca - 1.0) * kernel(t) / a;
        };
        left = integrate_interval(f, 0.0, std::pow(0.5, a), cfg);
    } else {
        auto f = [&](double t) { return std::pow(t, a - 1.0) * std::pow(1.0 - t, ca - 1.0) * kernel(t); };
        left = integrate_interval(f, 0.0, 0.5, cfg);
    }

    Complex right;
    if (ca < 1.0) {
        auto f = [&](double s) {
            const double t = 1.0 - std::pow(s, 1.0 / ca);
            return std::pow(t, a - 1.0) * kernel(t) / ca;
        };
        right = integrate_interval(f, 0.0, std::pow(0.5, ca), cfg);
    } else {
        auto f = [&](double t) { return std::pow(t, a - 1.0) * std::pow(1.0 - t, ca - 1.0) * kernel(t); };
        right = integrate_interval(f, 0.5, 1.0, cfg);
    }

    // gamma, alpha, gamma - alpha are all positive here
    const double norm = std::exp(std::lgamma(p.gamma) - std::lgamma(a) - std::lgamma(ca));
    return norm * (left + right);
}

/// Series radius used by the dispatcher; beyond it the Euler integral takes over.
inline constexpr double kAppellSeriesRadius = 0.95;

/// Evaluates F1 through whichever representation applies. Outside both it
/// reports unsupported-domain instead of extrapolating.
inline Complex appell_f1(const F1Params& p, Complex x, Complex y)
{
    if (appell_series_applicable(p, x, y, kAppellSeriesRadius) && !is_nonpositive_integer(p.gamma))
        return appell_f1_series(p, x, y);
    if (appell_integral_applicable(p, x, y))
        return appell_f1_integral(p, x, y);
    std::ostringstream os;
    os << "F1(" << p.alpha << "; " << p.beta1 << ", " << p.beta2 << "; " << p.gamma << "; "
       << format_complex(x) << ", " << format_complex(y) << ") is outside both the series and the integral domains";
    throw UnsupportedDomainError(os.str());
}

} // namespace hshear
