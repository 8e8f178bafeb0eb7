#pragma once

// Closed-form evaluators for the catalog of shear families.
//
//   F_a   : phi = z,   omega = z(z+a)/(1+az)
//   F_0a  : phi = k_0, omega = z(z+a)/(1+az)
//   F_1a  : phi = k_1, omega = z(z+a)/(1+az)
//   F_ca  : phi = k_c, omega = z(z+a)/(1+az)
//   f_0n  : phi = k_0, omega = z^n
//   f_1n  : phi = k_1, omega = z^n
//   f_2n  : phi = k_2, omega = z^n
//   f_cn  : phi = k_c, omega = z^n   (Appell F1 closed form)
//
// Every evaluator returns h and g separately with g = h - phi.

#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hshear/analytic_core.hpp"
#include "hshear/koebe.hpp"
#include "hshear/shear_engine.hpp"
#include "hshear/special_functions.hpp"

namespace hshear {

/// Width of the excluded neighbourhoods around the singular parameter values.
inline constexpr double kParameterEpsilon = 1e-3;

enum class FamilyId { F_a, F_0a, F_1a, F_ca, f_0n, f_1n, f_2n, f_cn };

inline const char* to_string(FamilyId f)
{
    switch (f) {
    case FamilyId::F_a: return "F_a";
    case FamilyId::F_0a: return "F_0a";
    case FamilyId::F_1a: return "F_1a";
    case FamilyId::F_ca: return "F_ca";
    case FamilyId::f_0n: return "f_0n";
    case FamilyId::f_1n: return "f_1n";
    case FamilyId::f_2n: return "f_2n";
    case FamilyId::f_cn: return "f_cn";
    }
    return "unknown";
}

inline std::optional<FamilyId> parse_family_id(std::string_view s)
{
    for (auto f : {FamilyId::F_a, FamilyId::F_0a, FamilyId::F_1a, FamilyId::F_ca, FamilyId::f_0n,
                   FamilyId::f_1n, FamilyId::f_2n, FamilyId::f_cn})
        if (s == to_string(f))
            return f;
    return std::nullopt;
}

struct FamilyParams {
    FamilyId family = FamilyId::F_a;
    double c = 0.0;
    double a = 0.0;
    int n = 1;

    bool uses_a() const
    {
        return family == FamilyId::F_a || family == FamilyId::F_0a || family == FamilyId::F_1a ||
               family == FamilyId::F_ca;
    }
    bool uses_c() const { return family == FamilyId::F_ca || family == FamilyId::f_cn; }
    bool uses_n() const { return !uses_a(); }

    /// The Koebe parameter of the prevertex (F_a has phi = z and no c).
    std::optional<double> koebe_c() const
    {
        switch (family) {
        case FamilyId::F_a: return std::nullopt;
        case FamilyId::F_0a:
        case FamilyId::f_0n: return 0.0;
        case FamilyId::F_1a:
        case FamilyId::f_1n: return 1.0;
        case FamilyId::f_2n: return 2.0;
        case FamilyId::F_ca:
        case FamilyId::f_cn: return c;
        }
        return std::nullopt;
    }

    void validate() const
    {
        std::ostringstream os;
        if (uses_a() && !(a >= -1.0 && a <= 1.0))
            os << "parameter a=" << a << " must lie in [-1, 1]";
        else if (uses_c() && !(c >= 0.0 && c <= 2.0))
            os << "parameter c=" << c << " must lie in [0, 2]";
        else if (uses_n() && n < 1)
            os << "parameter n=" << n << " must be a positive integer";
        if (!os.str().empty())
            throw DomainError(std::string(to_string(family)) + ": " + os.str());
    }

    std::string label() const
    {
        std::string s = to_string(family);
        if (uses_c())
            s += " c=" + shortest_string(c);
        if (uses_a())
            s += " a=" + shortest_string(a);
        if (uses_n())
            s += " n=" + std::to_string(n);
        return s;
    }

    static FamilyParams make_F_a(double a) { return {FamilyId::F_a, 0.0, a, 1}; }
    static FamilyParams make_F_0a(double a) { return {FamilyId::F_0a, 0.0, a, 1}; }
    static FamilyParams make_F_1a(double a) { return {FamilyId::F_1a, 1.0, a, 1}; }
    static FamilyParams make_F_ca(double c, double a) { return {FamilyId::F_ca, c, a, 1}; }
    static FamilyParams make_f_0n(int n) { return {FamilyId::f_0n, 0.0, 0.0, n}; }
    static FamilyParams make_f_1n(int n) { return {FamilyId::f_1n, 1.0, 0.0, n}; }
    static FamilyParams make_f_2n(int n) { return {FamilyId::f_2n, 2.0, 0.0, n}; }
    static FamilyParams make_f_cn(double c, int n) { return {FamilyId::f_cn, c, 0.0, n}; }
};

// ---------------------------------------------------------------------------
// Shared helpers

namespace detail {

/// Number of conjugate pole pairs e^{+-2k pi i/n} off the real axis.
inline int pole_pairs(int n) { return n % 2 ? (n - 1) / 2 : n / 2 - 1; }

inline double pole_angle(int k, int n) { return 2.0 * kPi * k / n; }

/// log((1 - z e^{-it}) / (1 - z e^{it})), each factor on its own principal branch.
inline Complex log_ratio(Complex z, double t)
{
    return principal_log(1.0 - z * std::polar(1.0, -t)) - principal_log(1.0 - z * std::polar(1.0, t));
}

/// log(1 - 2 z cos t + z^2) split into the two linear factors.
inline Complex log_quadratic(Complex z, double t)
{
    return principal_log(1.0 - z * std::polar(1.0, t)) + principal_log(1.0 - z * std::polar(1.0, -t));
}

inline double distance_to_set(double c, std::initializer_list<double> points)
{
    double d = std::numeric_limits<double>::infinity();
    for (double p : points)
        d = std::min(d, std::abs(c - p));
    return d;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Partial fractions of 1/((1-z)^2 (1-z^n)) and (1+z)/((1-z)^3 (1-z^n))

struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational make(long long num, long long den)
    {
        if (den == 0)
            throw DomainError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0)
            den = 1;
        return {num, den};
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

enum class PartialFractionKind { f_1n_odd, f_1n_even, f_2n_odd, f_2n_even };

inline const char* to_string(PartialFractionKind k)
{
    switch (k) {
    case PartialFractionKind::f_1n_odd: return "f_1n_odd";
    case PartialFractionKind::f_1n_even: return "f_1n_even";
    case PartialFractionKind::f_2n_odd: return "f_2n_odd";
    case PartialFractionKind::f_2n_even: return "f_2n_even";
    }
    return "unknown";
}

/// coeff / (1 - z)^power, or coeff / (1 + z)^power when at_minus_one.
struct ScalarTerm {
    std::string name;
    Rational coeff;
    int power = 1;
    bool at_minus_one = false;
};

/// first / (1 - z e^{-it_k}) + second / (1 - z e^{it_k}) with t_k = 2k pi / n.
struct PolePair {
    int k = 0;
    std::string first_name;
    std::string second_name;
    Complex first;
    Complex second;
};

struct PartialFractionCoeffs {
    PartialFractionKind kind = PartialFractionKind::f_1n_odd;
    int n = 1;
    std::vector<ScalarTerm> scalars;
    std::vector<PolePair> poles;

    bool is_f1n() const
    {
        return kind == PartialFractionKind::f_1n_odd || kind == PartialFractionKind::f_1n_even;
    }

    /// The rational function being decomposed.
    Complex target(Complex z) const
    {
        const Complex zn = std::pow(z, n);
        if (is_f1n())
            return 1.0 / ((1.0 - z) * (1.0 - z) * (1.0 - zn));
        return (1.0 + z) / (std::pow(1.0 - z, 3) * (1.0 - zn));
    }

    /// The partial-fraction sum.
    Complex evaluate(Complex z) const
    {
        Complex s{0.0, 0.0};
        for (const auto& t : scalars) {
            const Complex base = t.at_minus_one ? 1.0 + z : 1.0 - z;
            s += t.coeff.value() / std::pow(base, t.power);
        }
        for (const auto& p : poles) {
            const double t = detail::pole_angle(p.k, n);
            s += p.first / (1.0 - z * std::polar(1.0, -t)) + p.second / (1.0 - z * std::polar(1.0, t));
        }
        return s;
    }

    /// Term-by-term integral of the sum from 0 to z.
    Complex antiderivative(Complex z) const
    {
        Complex s{0.0, 0.0};
        for (const auto& t : scalars) {
            const double v = t.coeff.value();
            if (v == 0.0)
                continue;
            if (t.at_minus_one) {
                if (t.power != 1)
                    throw UnsupportedParameterError("only simple poles at z=-1 occur");
                s += v * principal_log(1.0 + z);
            } else if (t.power == 1) {
                s -= v * principal_log(1.0 - z);
            } else {
                const int p = t.power;
                s += v * (std::pow(1.0 - z, 1 - p) - 1.0) / static_cast<double>(p - 1);
            }
        }
        for (const auto& p : poles) {
            const double t = detail::pole_angle(p.k, n);
            const Complex e = std::polar(1.0, t);
            s -= p.first * e * principal_log(1.0 - z * std::conj(e));
            s -= p.second * std::conj(e) * principal_log(1.0 - z * e);
        }
        return s;
    }
};

inline PartialFractionCoeffs coeffs_f1n(int n)
{
    if (n < 1)
        throw DomainError("coeffs_f1n needs n >= 1");
    const long long N = n;
    const bool even = n % 2 == 0;
    PartialFractionCoeffs pf;
    pf.n = n;
    pf.kind = even ? PartialFractionKind::f_1n_even : PartialFractionKind::f_1n_odd;
    const std::string s = even ? "lambda" : "kappa";
    pf.scalars.push_back({s + "1", Rational::make(N * N - 1, 12 * N), 1, false});
    pf.scalars.push_back({s + "2", Rational::make(N - 1, 2 * N), 2, false});
    pf.scalars.push_back({s + "3", Rational::make(1, N), 3, false});
    if (even)
        pf.scalars.push_back({s + "4", Rational::make(1, 4 * N), 1, true});
    for (int k = 1; k <= detail::pole_pairs(n); ++k) {
        const Complex e = std::polar(1.0, detail::pole_angle(k, n));
        const Complex a = 1.0 / (static_cast<double>(n) * (1.0 - e) * (1.0 - e));
        const Complex b = 1.0 / (static_cast<double>(n) * (1.0 - std::conj(e)) * (1.0 - std::conj(e)));
        pf.poles.push_back({k, even ? "gamma" : "alpha", even ? "delta" : "beta", a, b});
    }
    return pf;
}

inline PartialFractionCoeffs coeffs_f2n(int n)
{
    if (n < 1)
        throw DomainError("coeffs_f2n needs n >= 1");
    const long long N = n;
    PartialFractionCoeffs pf;
    pf.n = n;
    pf.kind = n % 2 ? PartialFractionKind::f_2n_odd : PartialFractionKind::f_2n_even;
    pf.scalars.push_back({"lambda1", Rational::make(0, 1), 1, false});
    pf.scalars.push_back({"lambda2", Rational::make((N - 1) * (N - 2), 6 * N), 2, false});
    pf.scalars.push_back({"lambda3", Rational::make(N - 2, N), 3, false});
    pf.scalars.push_back({"lambda4", Rational::make(2, N), 4, false});
    // for even n the factor 1+z cancels the pole at -1
    for (int k = 1; k <= detail::pole_pairs(n); ++k) {
        const Complex e = std::polar(1.0, detail::pole_angle(k, n));
        const Complex a = (1.0 + e) / (static_cast<double>(n) * std::pow(1.0 - e, 3));
        pf.poles.push_back({k, "A", "B", a, std::conj(a)});
    }
    return pf;
}

// ---------------------------------------------------------------------------
// Families with omega = z(z+a)/(1+az)

inline MapSample eval_F_a(double a, DiskPoint p)
{
    FamilyParams::make_F_a(a).validate();
    const Complex z = p.value();
    const Complex h = 0.5 * (1.0 - a) * principal_log(1.0 + z) - 0.5 * (1.0 + a) * principal_log(1.0 - z);
    return MapSample::from_hg(p, h, h - z);
}

inline MapSample eval_F_0a(double a, DiskPoint p)
{
    FamilyParams::make_F_0a(a).validate();
    const Complex z = p.value();
    const Complex h = 0.5 * k_c_eval(0.0, z) + 0.25 * (1.0 + a) * z / (1.0 - z) + 0.25 * (1.0 - a) * z / (1.0 + z);
    return MapSample::from_hg(p, h, h - k_c_eval(0.0, z));
}

inline MapSample eval_F_1a(double a, DiskPoint p)
{
    FamilyParams::make_F_1a(a).validate();
    const Complex z = p.value();
    const Complex k1 = z / (1.0 - z);
    const Complex h =
        0.5 * (0.5 * (1.0 - a) * k_c_eval(0.0, z) + 0.5 * (1.0 + a) * z / ((1.0 - z) * (1.0 - z)) + k1);
    return MapSample::from_hg(p, h, h - k1);
}

/// Closed form for c in (0, 2] away from c = 1; c = 0 and c = 1 delegate to
/// F_0a and F_1a, and the remaining neighbourhoods go to the shear oracle
/// (or raise unsupported-parameter when `allow_fallback` is false).
inline MapSample eval_F_ca(double c, double a, DiskPoint p, bool allow_fallback = true)
{
    FamilyParams::make_F_ca(c, a).validate();
    if (c == 0.0) {
        auto s = eval_F_0a(a, p);
        s.source = SampleSource::delegated;
        return s;
    }
    if (c == 1.0) {
        auto s = eval_F_1a(a, p);
        s.source = SampleSource::delegated;
        return s;
    }
    if (detail::distance_to_set(c, {0.0, 1.0}) <= kParameterEpsilon) {
        if (!allow_fallback) {
            std::ostringstream os;
            os << "F_ca closed form is singular for c=" << c << " (within 1e-3 of 0 or 1)";
            throw UnsupportedParameterError(os.str());
        }
        return shear_at(PrevertexSpec::koebe(c), DilatationSpec::mobius(a), p);
    }
    const Complex z = p.value();
    const Complex w = (1.0 + z) / (1.0 - z);
    const Complex wc = principal_pow(w, c);
    const Complex h = 0.125 * ((a + 1.0) / (c + 1.0) * wc * w + (2.0 / c) * wc - (a - 1.0) / (c - 1.0) * wc / w -
                               2.0 * (1.0 + a * c - 2.0 * c * c) / (c * (1.0 - c * c)));
    return MapSample::from_hg(p, h, h - k_c_eval(c, z));
}

// ---------------------------------------------------------------------------
// Families with omega = z^n

inline MapSample eval_f0n(int n, DiskPoint p)
{
    FamilyParams::make_f_0n(n).validate();
    const Complex z = p.value();
    Complex sum{0.0, 0.0};
    for (int k = 1; k <= detail::pole_pairs(n); ++k) {
        const double t = detail::pole_angle(k, n);
        sum += detail::log_ratio(z, t) / std::sin(t);
    }
    const Complex lead = n % 2 ? z / (1.0 - z) : 2.0 * z / (1.0 - z * z);
    const Complex e = (lead - Complex(0.0, 1.0) * sum) / static_cast<double>(n);
    const Complex k0 = k_c_eval(0.0, z);
    const Complex h = 0.5 * (k0 + e);
    return MapSample::from_hg(p, h, h - k0);
}

inline MapSample eval_f1n(int n, DiskPoint p)
{
    FamilyParams::make_f_1n(n).validate();
    const Complex z = p.value();
    const Complex h = coeffs_f1n(n).antiderivative(z);
    return MapSample::from_hg(p, h, h - z / (1.0 - z));
}

inline MapSample eval_f2n(int n, DiskPoint p)
{
    FamilyParams::make_f_2n(n).validate();
    const Complex z = p.value();
    const Complex h = coeffs_f2n(n).antiderivative(z);
    return MapSample::from_hg(p, h, h - z / ((1.0 - z) * (1.0 - z)));
}

// ---------------------------------------------------------------------------
// f_cn: Appell F1 closed form

/// Integration constants of the f_cn closed form. `nominal` is the formula
/// constant for the parity at hand, `applied` the one that makes h(0) = 0.
struct F1Constants {
    Complex N1;         // odd-n constant (zero for even n)
    Complex N2;         // even-n constant (zero for odd n)
    Complex nominal;    // N1 or N2
    Complex applied;
    Complex correction; // applied - nominal
};

class FcnEvaluator {
public:
    enum class Mode { closed_form, delegate_f0n, delegate_f1n, delegate_f2n, shear_oracle };

    FcnEvaluator(double c, int n, bool allow_fallback = true) : c_(c), n_(n), allow_fallback_(allow_fallback)
    {
        FamilyParams::make_f_cn(c, n).validate();
        if (c == 0.0)
            mode_ = Mode::delegate_f0n;
        else if (c == 1.0)
            mode_ = Mode::delegate_f1n;
        else if (c == 2.0)
            mode_ = Mode::delegate_f2n;
        else if (detail::distance_to_set(c, {0.0, 1.0, 2.0}) <= kParameterEpsilon) {
            if (!allow_fallback) {
                std::ostringstream os;
                os << "f_cn closed form is singular for c=" << c << " (within 1e-3 of 0, 1 or 2)";
                throw UnsupportedParameterError(os.str());
            }
            mode_ = Mode::shear_oracle;
        } else {
            try {
                constants_ = compute_constants();
                lift_offset_ = lift_kernel(Complex(0.0, 0.0));
            } catch (const UnsupportedDomainError&) {
                if (!allow_fallback)
                    throw;
                mode_ = Mode::shear_oracle;
            }
        }
    }

    double c() const { return c_; }
    int n() const { return n_; }
    Mode mode() const { return mode_; }
    const std::optional<F1Constants>& constants() const { return constants_; }

    MapSample operator()(DiskPoint p) const
    {
        switch (mode_) {
        case Mode::delegate_f0n: return delegated(eval_f0n(n_, p));
        case Mode::delegate_f1n: return delegated(eval_f1n(n_, p));
        case Mode::delegate_f2n: return delegated(eval_f2n(n_, p));
        case Mode::shear_oracle: return oracle(p);
        case Mode::closed_form: break;
        }
        const Complex z = p.value();
        try {
            const Complex h = kernel(z) - constants_->applied;
            return MapSample::from_hg(p, h, h - k_c_eval(c_, z));
        } catch (const UnsupportedDomainError&) {
            if (!allow_fallback_)
                throw;
            return oracle(p);
        }
    }

    /// 2 Im of the even-n lift potential, normalized to vanish at 0.
    /// Returns nullopt when an F1 evaluation leaves the supported domain.
    std::optional<double> lift_closed_form(Complex z) const
    {
        if (mode_ != Mode::closed_form || n_ % 2)
            return std::nullopt;
        try {
            return 2.0 * (lift_kernel(z) - lift_offset_).imag();
        } catch (const UnsupportedDomainError&) {
            if (!allow_fallback_)
                throw;
            return std::nullopt;
        }
    }

    /// h(z) from the closed form without any integration constant.
    Complex kernel(Complex z) const
    {
        const Complex w = principal_pow((1.0 + z) / (1.0 - z), c_);
        Complex lead = 1.0 / (4.0 * c_) + (1.0 + z) / (4.0 * n_ * (1.0 + c_) * (1.0 - z));
        if (n_ % 2 == 0)
            lead -= (1.0 - z) / (4.0 * n_ * (1.0 - c_) * (1.0 + z));
        Complex s = w * lead;
        for (int k = 1; k <= detail::pole_pairs(n_); ++k)
            s += pole_term(k, z);
        return s;
    }

private:
    static MapSample delegated(MapSample s)
    {
        s.source = SampleSource::delegated;
        return s;
    }

    MapSample oracle(DiskPoint p) const
    {
        return shear_at(PrevertexSpec::koebe(c_), DilatationSpec::power(n_), p);
    }

    F1Params f1_params() const { return {1.0 - c_, -c_, 1.0, 2.0 - c_}; }

    // T_k(z) = 2^c (1-z)^(1-c) / (n (1-c)) * [ e F1(x, y1) / ((1-e)(1-e^2)) - F1(x, y2) / ((1-e)(1-conj(e)^2)) ]
    // with x = (1-z)/2, y1 = (1-z)/(1-e), y2 = (1-z)/(1-conj(e)).
    Complex pole_term(int k, Complex z) const
    {
        const Complex e = std::polar(1.0, detail::pole_angle(k, n_));
        const Complex eb = std::conj(e);
        const Complex x = 0.5 * (1.0 - z);
        const F1Params p = f1_params();
        const Complex first = e * appell_f1(p, x, (1.0 - z) / (1.0 - e)) / ((1.0 - e) * (1.0 - e * e));
        const Complex second = appell_f1(p, x, (1.0 - z) / (1.0 - eb)) / ((1.0 - e) * (1.0 - eb * eb));
        const Complex scale = std::pow(2.0, c_) * principal_pow(1.0 - z, 1.0 - c_) / (n_ * (1.0 - c_));
        return scale * (first - second);
    }

    F1Constants compute_constants() const
    {
        const F1Params p = f1_params();
        const double base = std::pow(2.0, c_) / (n_ * (1.0 - c_));
        F1Constants k;
        if (n_ % 2) {
            Complex s = 1.0 / (4.0 * c_) + 1.0 / (4.0 * n_ * (1.0 + c_));
            for (int j = 1; j <= detail::pole_pairs(n_); ++j) {
                const Complex e = std::polar(1.0, detail::pole_angle(j, n_));
                const Complex eb = std::conj(e);
                s += base * e * appell_f1(p, 0.5, 1.0 / (1.0 - e)) / ((1.0 - e) * (1.0 - e * e));
                s -= base * appell_f1(p, 0.5, 1.0 / (1.0 - eb)) / ((1.0 - e) * (1.0 - eb * eb));
            }
            k.N1 = s;
            k.nominal = s;
        } else {
            Complex s = 1.0 / (4.0 * c_) + c_ / (2.0 * n_ * (1.0 - c_ * c_));
            for (int j = 1; j <= detail::pole_pairs(n_); ++j) {
                const Complex e = std::polar(1.0, detail::pole_angle(j, n_));
                const Complex eb = std::conj(e);
                s += base * e * appell_f1(p, 0.5, 1.0 / (1.0 - e)) / ((1.0 - e) * (1.0 - e) * (1.0 + e));
                s -= base * appell_f1(p, 0.5, -e / (1.0 - e)) / ((1.0 - e) * (1.0 - eb * eb));
            }
            k.N2 = s;
            k.nominal = s;
        }
        k.applied = kernel(Complex(0.0, 0.0));
        k.correction = k.applied - k.nominal;
        return k;
    }

    Complex lift_kernel(Complex z) const
    {
        const Complex w = principal_pow((1.0 + z) / (1.0 - z), c_);
        const double sign = (n_ / 2) % 2 ? -1.0 : 1.0;
        Complex s = w * ((1.0 + z) / (4.0 * n_ * (1.0 + c_) * (1.0 - z)) -
                         sign * (1.0 - z) / (4.0 * n_ * (1.0 - c_) * (1.0 + z)));
        for (int k = 1; k <= detail::pole_pairs(n_); ++k)
            s += (k % 2 ? -1.0 : 1.0) * pole_term(k, z);
        return s;
    }

    double c_;
    int n_;
    bool allow_fallback_;
    Mode mode_ = Mode::closed_form;
    std::optional<F1Constants> constants_;
    Complex lift_offset_;
};

inline MapSample eval_fcn(double c, int n, DiskPoint p, bool allow_fallback = true)
{
    return FcnEvaluator(c, n, allow_fallback)(p);
}

// ---------------------------------------------------------------------------
// Dispatcher

inline PrevertexSpec family_prevertex(const FamilyParams& f)
{
    if (const auto c = f.koebe_c())
        return PrevertexSpec::koebe(*c);
    return PrevertexSpec::identity();
}

inline DilatationSpec family_dilatation(const FamilyParams& f)
{
    return f.uses_a() ? DilatationSpec::mobius(f.a) : DilatationSpec::power(f.n);
}

/// A validated family with its prevertex, dilatation and (for f_cn) cached
/// F1 constants.
class Family {
public:
    explicit Family(FamilyParams params, bool allow_fallback = true)
        : params_(params), allow_fallback_(allow_fallback)
    {
        params_.validate();
        phi_ = family_prevertex(params_);
        omega_ = family_dilatation(params_);
        if (params_.family == FamilyId::f_cn)
            fcn_.emplace(params_.c, params_.n, allow_fallback);
    }

    const FamilyParams& params() const { return params_; }
    const PrevertexSpec& prevertex() const { return phi_; }
    const DilatationSpec& dilatation() const { return omega_; }
    const std::optional<FcnEvaluator>& fcn() const { return fcn_; }
    bool allow_fallback() const { return allow_fallback_; }

    MapSample sample(DiskPoint p) const
    {
        switch (params_.family) {
        case FamilyId::F_a: return eval_F_a(params_.a, p);
        case FamilyId::F_0a: return eval_F_0a(params_.a, p);
        case FamilyId::F_1a: return eval_F_1a(params_.a, p);
        case FamilyId::F_ca: return eval_F_ca(params_.c, params_.a, p, allow_fallback_);
        case FamilyId::f_0n: return eval_f0n(params_.n, p);
        case FamilyId::f_1n: return eval_f1n(params_.n, p);
        case FamilyId::f_2n: return eval_f2n(params_.n, p);
        case FamilyId::f_cn: return (*fcn_)(p);
        }
        throw UnsupportedParameterError("unknown family");
    }

    MapSample sample(Complex z) const { return sample(DiskPoint(z)); }

    /// h' straight from the shear integrand.
    Complex hprime(Complex z) const { return shear_hprime(phi_, omega_, z); }

    std::vector<MapSample> sample_grid(const GridSpec& grid) const
    {
        std::vector<MapSample> out;
        for (const auto& p : grid.nodes()) {
            try {
                out.push_back(sample(p));
            } catch (const Error& e) {
                rethrow_at(e, p.value());
            }
        }
        return out;
    }

private:
    FamilyParams params_;
    bool allow_fallback_;
    PrevertexSpec phi_;
    DilatationSpec omega_;
    std::optional<FcnEvaluator> fcn_;
};

} // namespace hshear
